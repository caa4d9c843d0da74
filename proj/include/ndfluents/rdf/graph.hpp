#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ndfluents/rdf/term.hpp"

namespace ndfluents::rdf {

// A validated RDF triple: the subject is never a literal and the predicate is
// always an IRI.
class Triple {
 public:
  Triple(Term subject, Term predicate, Term object);

  const Term& subject() const { return subject_; }
  const Term& predicate() const { return predicate_; }
  const Term& object() const { return object_; }

  auto operator<=>(const Triple&) const = default;

 private:
  Term subject_;
  Term predicate_;
  Term object_;
};

std::ostream& operator<<(std::ostream& os, const Triple& triple);

// A set of triples with an optional graph name. Iteration is in (subject,
// predicate, object) order.
class Graph {
 public:
  using Storage = std::set<Triple>;
  using const_iterator = Storage::const_iterator;

  Graph() = default;
  explicit Graph(std::optional<Iri> name) : name_(std::move(name)) {}
  Graph(std::initializer_list<Triple> triples);

  // Returns true if the triple was not already present.
  bool insert(const Triple& triple) { return triples_.insert(triple).second; }
  bool insert(Term s, Term p, Term o);
  void insertAll(const Graph& other);
  bool erase(const Triple& triple) { return triples_.erase(triple) > 0; }
  bool contains(const Triple& triple) const { return triples_.contains(triple); }

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  const std::optional<Iri>& name() const { return name_; }
  void setName(std::optional<Iri> name) { name_ = std::move(name); }

  // Linear scan; nullopt positions are wildcards.
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;

  bool operator==(const Graph& other) const = default;

 private:
  std::optional<Iri> name_;
  Storage triples_;
};

// Set union. The result keeps the name only if both inputs agree on it.
Graph graphUnion(const Graph& a, const Graph& b);

// Returns `graph` with blank nodes relabeled `b0, b1, ...` in the order they
// first occur in the serialization order. Serializers emit this form, so
// parsing a serialized graph yields exactly `canonicalizeBlankNodes(g)`.
Graph canonicalizeBlankNodes(const Graph& graph);

// Read-only (s, p) -> objects and (p, o) -> subjects lookups over a graph.
// The indexed graph must outlive the index.
class TripleIndex {
 public:
  explicit TripleIndex(const Graph& graph);

  const std::vector<const Triple*>& bySubject(const Term& s) const;
  const std::vector<const Triple*>& byObject(const Term& o) const;
  const std::vector<const Triple*>& byPredicate(const Term& p) const;
  std::vector<Term> objects(const Term& s, const Term& p) const;
  std::vector<Term> subjects(const Term& p, const Term& o) const;
  bool has(const Term& s, const Term& p, const Term& o) const;

 private:
  const Graph& graph_;
  std::map<Term, std::vector<const Triple*>> bySubject_;
  std::map<Term, std::vector<const Triple*>> byObject_;
  std::map<Term, std::vector<const Triple*>> byPredicate_;
};

}  // namespace ndfluents::rdf
