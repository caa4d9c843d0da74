#include "ndfluents/rdf/graph.hpp"

#include <algorithm>
#include <unordered_map>

namespace ndfluents::rdf {

Triple::Triple(Term subject, Term predicate, Term object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
  if (subject_.isLiteral()) {
    throw std::invalid_argument("literal in subject position: " + toNTriples(subject_));
  }
  if (!predicate_.isIri()) {
    throw std::invalid_argument("predicate must be an IRI: " + toNTriples(predicate_));
  }
}

std::ostream& operator<<(std::ostream& os, const Triple& t) {
  return os << t.subject() << ' ' << t.predicate() << ' ' << t.object() << " .";
}

Graph::Graph(std::initializer_list<Triple> triples) : triples_(triples) {}

bool Graph::insert(Term s, Term p, Term o) {
  return insert(Triple{std::move(s), std::move(p), std::move(o)});
}

void Graph::insertAll(const Graph& other) { triples_.insert(other.begin(), other.end()); }

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  for (const auto& t : triples_) {
    if (s && t.subject() != *s) continue;
    if (p && t.predicate() != *p) continue;
    if (o && t.object() != *o) continue;
    out.push_back(t);
  }
  return out;
}

Graph graphUnion(const Graph& a, const Graph& b) {
  Graph out(a.name() == b.name() ? a.name() : std::nullopt);
  out.insertAll(a);
  out.insertAll(b);
  return out;
}

namespace {

using Relabeling = std::unordered_map<std::string, std::string>;

std::vector<Triple> relabel(const std::vector<Triple>& triples, const Relabeling& map) {
  auto fix = [&](const Term& t) { return t.isBlank() ? Term::blank(map.at(t.value())) : t; };
  std::vector<Triple> out;
  out.reserve(triples.size());
  for (const auto& t : triples) out.emplace_back(fix(t.subject()), t.predicate(), fix(t.object()));
  return out;
}

}  // namespace

Graph canonicalizeBlankNodes(const Graph& graph) {
  std::vector<Triple> triples(graph.begin(), graph.end());
  // Relabeling can reorder triples, which changes first-occurrence order, so
  // iterate until the labeling is stable. Small graphs settle in one or two
  // rounds; the cap bounds pathological symmetric cases.
  for (int round = 0; round < 16; ++round) {
    std::sort(triples.begin(), triples.end());
    Relabeling map;
    bool identity = true;
    auto visit = [&](const Term& t) {
      if (!t.isBlank() || map.contains(t.value())) return;
      std::string label = "b" + std::to_string(map.size());
      identity = identity && label == t.value();
      map.emplace(t.value(), std::move(label));
    };
    for (const auto& t : triples) {
      visit(t.subject());
      visit(t.object());
    }
    if (identity) break;
    triples = relabel(triples, map);
  }
  Graph out(graph.name());
  for (const auto& t : triples) out.insert(t);
  return out;
}

TripleIndex::TripleIndex(const Graph& graph) : graph_(graph) {
  for (const auto& t : graph_) {
    bySubject_[t.subject()].push_back(&t);
    byObject_[t.object()].push_back(&t);
    byPredicate_[t.predicate()].push_back(&t);
  }
}

namespace {
const std::vector<const Triple*>& lookup(const std::map<Term, std::vector<const Triple*>>& m,
                                         const Term& key) {
  static const std::vector<const Triple*> kEmpty;
  auto it = m.find(key);
  return it == m.end() ? kEmpty : it->second;
}
}  // namespace

const std::vector<const Triple*>& TripleIndex::bySubject(const Term& s) const {
  return lookup(bySubject_, s);
}
const std::vector<const Triple*>& TripleIndex::byObject(const Term& o) const {
  return lookup(byObject_, o);
}
const std::vector<const Triple*>& TripleIndex::byPredicate(const Term& p) const {
  return lookup(byPredicate_, p);
}

std::vector<Term> TripleIndex::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  for (const Triple* t : bySubject(s)) {
    if (t->predicate() == p) out.push_back(t->object());
  }
  return out;
}

std::vector<Term> TripleIndex::subjects(const Term& p, const Term& o) const {
  std::vector<Term> out;
  for (const Triple* t : byObject(o)) {
    if (t->predicate() == p) out.push_back(t->subject());
  }
  return out;
}

bool TripleIndex::has(const Term& s, const Term& p, const Term& o) const {
  return graph_.contains(Triple{s, p, o});
}

}  // namespace ndfluents::rdf
