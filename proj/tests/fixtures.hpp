#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <random>
#include <string>
#include <vector>

#include "ndfluents/contextualizer.hpp"
#include "ndfluents/rdf/graph.hpp"

namespace ndfluents::testing {

inline constexpr std::string_view kEx = "http://example.org/";

inline Iri ex(std::string_view local) { return rdf::vocab(kEx, local); }
inline rdf::Term exTerm(std::string_view local) { return rdf::Term{ex(local)}; }
inline rdf::Term typeTerm() { return rdf::Term{rdf::vocabulary::rdfType()}; }

inline rdf::Triple triple(std::string_view s, std::string_view p, std::string_view o) {
  return rdf::Triple{exTerm(s), exTerm(p), exTerm(o)};
}

inline ContextAssignment temporal(std::string_view ctx) { return {"temporal", ex(ctx), {}}; }
inline ContextAssignment provenance(std::string_view ctx) { return {"provenance", ex(ctx), {}}; }

// Paris capitalOf France in the given contexts.
inline AnnotatedStatement parisCapital(std::vector<ContextAssignment> contexts) {
  return AnnotatedStatement{triple("Paris", "capitalOf", "France"), std::move(contexts)};
}

inline ContextualizeOptions keepBase(CombinationModel model = CombinationModel::multiContextPart()) {
  ContextualizeOptions options;
  options.model = std::move(model);
  options.predicates = PredicateMode::kKeepBase;
  return options;
}

// temporal, provenance and a generated "trust" dimension.
inline DimensionRegistry threeDimensions() {
  DimensionRegistry dims = DimensionRegistry::standard();
  dims.add(makeDimension("trust", "http://example.org/trust#"));
  return dims;
}

struct RandomCorpus {
  std::vector<AnnotatedStatement> statements;
  std::vector<std::string> nesting;  // a permutation of all dimensions in use
};

// 1..10 statements over small pools of entities, predicates, classes,
// literals and per-dimension contexts, using 1..3 of the dimensions of
// threeDimensions(). Pools are small, so parts and contexts are shared.
inline RandomCorpus randomCorpus(std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::vector<std::string> allDims{"temporal", "provenance", "trust"};
  std::shuffle(allDims.begin(), allDims.end(), rng);
  std::vector<std::string> dims(allDims.begin(), allDims.begin() + 1 + static_cast<long>(pick(3)));

  RandomCorpus corpus;
  corpus.nesting = dims;
  std::size_t count = 1 + pick(10);
  for (std::size_t i = 0; i < count; ++i) {
    rdf::Term subject = exTerm("e" + std::to_string(pick(5)));
    rdf::Term predicate = exTerm("p" + std::to_string(pick(3)));
    rdf::Term object;
    switch (pick(6)) {
      case 0: object = rdf::Term::integer(static_cast<long long>(pick(4))); break;
      case 1: object = rdf::Term::langLiteral("name" + std::to_string(pick(2)), "en"); break;
      case 2:
        predicate = typeTerm();
        object = exTerm("C" + std::to_string(pick(2)));
        break;
      default: object = exTerm("e" + std::to_string(pick(5)));
    }
    std::vector<ContextAssignment> contexts;
    std::size_t mask = 1 + pick((std::size_t{1} << dims.size()) - 1);
    for (std::size_t d = 0; d < dims.size(); ++d) {
      if (mask & (std::size_t{1} << d)) contexts.push_back({dims[d], ex(dims[d] + "-c" + std::to_string(pick(3))), {}});
    }
    corpus.statements.emplace_back(rdf::Triple{subject, predicate, object}, std::move(contexts));
  }
  return corpus;
}

inline std::vector<AnnotatedStatement> sortedUnique(std::vector<AnnotatedStatement> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}


// Brute-force isomorphism: terms for which `flexible` holds (on both sides)
// may be renamed by a bijection, every other term must match exactly.
inline bool isomorphic(const rdf::Graph& a, const rdf::Graph& b,
                       const std::function<bool(const rdf::Term&)>& flexible) {
  if (a.size() != b.size()) return false;
  auto collect = [&](const rdf::Graph& g) {
    std::set<rdf::Term> out;
    for (const auto& t : g) {
      for (const auto* x : {&t.subject(), &t.predicate(), &t.object()}) {
        if (flexible(*x)) out.insert(*x);
      }
    }
    return std::vector<rdf::Term>(out.begin(), out.end());
  };
  std::vector<rdf::Term> from = collect(a);
  std::vector<rdf::Term> to = collect(b);
  if (from.size() != to.size()) return false;

  std::map<rdf::Term, rdf::Term> mapping;
  std::set<rdf::Term> used;
  auto image = [&](const rdf::Term& x, rdf::Term& y) {
    if (!flexible(x)) {
      y = x;
      return true;
    }
    auto it = mapping.find(x);
    if (it == mapping.end()) return false;
    y = it->second;
    return true;
  };
  // Every fully mapped triple of `a` must be in `b`.
  auto consistent = [&]() {
    for (const auto& t : a) {
      rdf::Term s, p, o;
      if (!image(t.subject(), s) || !image(t.predicate(), p) || !image(t.object(), o)) continue;
      if (!b.contains(rdf::Triple{s, p, o})) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == from.size()) return true;
    for (const auto& candidate : to) {
      if (used.contains(candidate)) continue;
      mapping[from[i]] = candidate;
      used.insert(candidate);
      if (consistent() && search(i + 1)) return true;
      used.erase(candidate);
      mapping.erase(from[i]);
    }
    return false;
  };
  return search(0);
}

inline bool isBlank(const rdf::Term& t) { return t.isBlank(); }

}  // namespace ndfluents::testing
