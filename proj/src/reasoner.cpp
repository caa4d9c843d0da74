#include "ndfluents/reasoner.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ndfluents {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

std::string violationKindName(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDisjointClasses: return "DisjointClasses";
    case ViolationKind::kFunctionalConflict: return "FunctionalConflict";
    case ViolationKind::kMissingPartOf: return "MissingPartOf";
    case ViolationKind::kRangeComplement: return "RangeComplement";
    case ViolationKind::kSameExtentRule: return "SameExtentRule";
  }
  return "";
}

const Iri& owlSameAs() {
  static const Iri iri = rdf::vocab(rdf::ns::kOwl, "sameAs");
  return iri;
}

std::vector<std::pair<Term, Term>> InferenceResult::sameAsPairs() const {
  std::vector<std::pair<Term, Term>> out;
  const Term same{owlSameAs()};
  for (const auto& t : derived) {
    if (t.predicate() == same && t.subject() < t.object()) out.emplace_back(t.subject(), t.object());
  }
  return out;
}

namespace {

const Term& typeTerm() {
  static const Term t{rdf::vocabulary::rdfType()};
  return t;
}

using TermSet = std::set<Term>;
using Adjacency = std::map<Term, std::map<Term, TermSet>>;

// Strict reflexive-free closure of a directed edge relation.
std::map<Term, TermSet> closure(const std::map<Term, TermSet>& direct) {
  std::map<Term, TermSet> out;
  for (const auto& [start, _] : direct) {
    TermSet seen;
    std::vector<Term> stack{start};
    while (!stack.empty()) {
      Term cur = stack.back();
      stack.pop_back();
      auto it = direct.find(cur);
      if (it == direct.end()) continue;
      for (const Term& next : it->second) {
        if (seen.insert(next).second) stack.push_back(next);
      }
    }
    seen.erase(start);
    out.emplace(start, std::move(seen));
  }
  return out;
}

struct Rules {
  std::map<Term, TermSet> superClasses;
  std::map<Term, TermSet> superProperties;
  std::map<Term, TermSet> domains;
  std::map<Term, TermSet> ranges;
  TermSet transitive;
  TermSet functional;
  TermSet inverseFunctional;
  // property -> (via, class), and via -> (property, class)
  std::map<Term, std::vector<std::pair<Term, Term>>> avfDomainByProperty, avfDomainByVia;
  std::map<Term, std::vector<std::pair<Term, Term>>> avfRangeByProperty, avfRangeByVia;
  std::vector<axiom::DisjointClasses> disjoint;
  std::vector<axiom::RangeComplementOf> rangeComplements;

  explicit Rules(std::span<const Axiom> axioms) {
    std::map<Term, TermSet> subClass, subProperty;
    for (const auto& a : axioms) {
      std::visit(
          [&](const auto& ax) {
            using T = std::decay_t<decltype(ax)>;
            if constexpr (std::is_same_v<T, axiom::SubClassOf>) {
              subClass[Term{ax.subClass}].insert(Term{ax.superClass});
            } else if constexpr (std::is_same_v<T, axiom::SubPropertyOf>) {
              subProperty[Term{ax.subProperty}].insert(Term{ax.superProperty});
            } else if constexpr (std::is_same_v<T, axiom::Domain>) {
              domains[Term{ax.property}].insert(Term{ax.cls});
            } else if constexpr (std::is_same_v<T, axiom::Range>) {
              ranges[Term{ax.property}].insert(Term{ax.cls});
            } else if constexpr (std::is_same_v<T, axiom::Transitive>) {
              transitive.insert(Term{ax.property});
            } else if constexpr (std::is_same_v<T, axiom::Functional>) {
              functional.insert(Term{ax.property});
            } else if constexpr (std::is_same_v<T, axiom::InverseFunctional>) {
              inverseFunctional.insert(Term{ax.property});
            } else if constexpr (std::is_same_v<T, axiom::AllValuesFromDomain>) {
              avfDomainByProperty[Term{ax.property}].emplace_back(Term{ax.via}, Term{ax.cls});
              avfDomainByVia[Term{ax.via}].emplace_back(Term{ax.property}, Term{ax.cls});
            } else if constexpr (std::is_same_v<T, axiom::AllValuesFromRange>) {
              avfRangeByProperty[Term{ax.property}].emplace_back(Term{ax.via}, Term{ax.cls});
              avfRangeByVia[Term{ax.via}].emplace_back(Term{ax.property}, Term{ax.cls});
            } else if constexpr (std::is_same_v<T, axiom::DisjointClasses>) {
              disjoint.push_back(ax);
            } else if constexpr (std::is_same_v<T, axiom::RangeComplementOf>) {
              rangeComplements.push_back(ax);
            }
          },
          a);
    }
    superClasses = closure(subClass);
    superProperties = closure(subProperty);
  }
};

template <class Map>
const typename Map::mapped_type* lookup(const Map& m, const Term& key) {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

class Saturator {
 public:
  Saturator(const Rules& rules) : rules_(rules) {}

  void run(const Graph& input) {
    for (const auto& t : input) add(t.subject(), t.predicate(), t.object());
    while (!queue_.empty()) {
      Triple t = queue_.front();
      queue_.pop_front();
      fire(t);
    }
  }

  const Graph& all() const { return all_; }
  const Adjacency& out() const { return out_; }
  const Adjacency& in() const { return in_; }

  std::vector<Term> objects(const Term& s, const Term& p) const {
    if (auto* byP = lookup(out_, s)) {
      if (auto* objs = lookup(*byP, p)) return {objs->begin(), objs->end()};
    }
    return {};
  }
  std::vector<Term> subjects(const Term& p, const Term& o) const {
    if (auto* byP = lookup(in_, o)) {
      if (auto* subs = lookup(*byP, p)) return {subs->begin(), subs->end()};
    }
    return {};
  }
  bool has(const Term& s, const Term& p, const Term& o) const { return all_.contains(Triple{s, p, o}); }

 private:
  void add(const Term& s, const Term& p, const Term& o) {
    if (s.isLiteral()) return;
    Triple t{s, p, o};
    if (!all_.insert(t)) return;
    out_[s][p].insert(o);
    in_[o][p].insert(s);
    queue_.push_back(std::move(t));
  }

  void fire(const Triple& t) {
    const Term& s = t.subject();
    const Term& p = t.predicate();
    const Term& o = t.object();
    if (p == typeTerm()) {
      if (auto* supers = lookup(rules_.superClasses, o)) {
        for (const Term& c : *supers) add(s, typeTerm(), c);
      }
    }
    if (auto* supers = lookup(rules_.superProperties, p)) {
      for (const Term& q : *supers) add(s, q, o);
    }
    if (auto* classes = lookup(rules_.domains, p)) {
      for (const Term& c : *classes) add(s, typeTerm(), c);
    }
    if (auto* classes = lookup(rules_.ranges, p); classes && !o.isLiteral()) {
      for (const Term& c : *classes) add(o, typeTerm(), c);
    }
    if (rules_.transitive.contains(p) && !o.isLiteral()) {
      for (const Term& z : objects(o, p)) add(s, p, z);
      for (const Term& w : subjects(p, s)) add(w, p, o);
    }
    if (auto* rs = lookup(rules_.avfDomainByProperty, p)) {
      for (const auto& [via, c] : *rs) {
        for (const Term& z : objects(s, via)) add(z, typeTerm(), c);
      }
    }
    if (auto* rs = lookup(rules_.avfDomainByVia, p)) {
      for (const auto& [q, c] : *rs) {
        if (!objects(s, q).empty()) add(o, typeTerm(), c);
      }
    }
    if (auto* rs = lookup(rules_.avfRangeByProperty, p); rs && !o.isLiteral()) {
      for (const auto& [via, c] : *rs) {
        for (const Term& z : objects(o, via)) add(z, typeTerm(), c);
      }
    }
    if (auto* rs = lookup(rules_.avfRangeByVia, p)) {
      for (const auto& [q, c] : *rs) {
        if (!subjects(q, s).empty()) add(o, typeTerm(), c);
      }
    }
  }

  const Rules& rules_;
  Graph all_;
  Adjacency out_;
  Adjacency in_;
  std::deque<Triple> queue_;
};

bool lessViolation(const Violation& a, const Violation& b) {
  return std::tie(a.kind, a.resources, a.detail) < std::tie(b.kind, b.resources, b.detail);
}

}  // namespace

InferenceResult saturate(const Graph& graph, std::span<const Axiom> axioms, const CoreVocabulary& core) {
  Rules rules(axioms);
  Saturator sat(rules);
  sat.run(graph);

  InferenceResult result;
  Graph identities;
  const Term same{owlSameAs()};
  auto addSame = [&](const Term& a, const Term& b) {
    if (a.isLiteral() || b.isLiteral()) return;
    identities.insert(a, same, b);
    identities.insert(b, same, a);
  };
  const Term partOf{core.contextualPartOf()};

  for (const Term& p : rules.functional) {
    bool transitive = rules.transitive.contains(p);
    for (const auto& [s, byP] : sat.out()) {
      auto it = byP.find(p);
      if (it == byP.end() || it->second.size() < 2) continue;
      std::vector<Term> targets(it->second.begin(), it->second.end());
      TermSet clashing;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
          const Term &a = targets[i], &b = targets[j];
          if (transitive && (sat.has(a, p, b) || sat.has(b, p, a))) continue;
          if (p == partOf) {
            clashing.insert(a);
            clashing.insert(b);
          } else {
            addSame(a, b);
          }
        }
      }
      if (clashing.empty()) continue;
      Violation v{ViolationKind::kFunctionalConflict, {s}, "", {}};
      for (const Term& target : clashing) {
        v.resources.push_back(target);
        v.triggers.emplace_back(s, p, target);
      }
      v.detail = toNTriples(s) + " is " + toNTriples(p) + " of " + std::to_string(clashing.size()) +
                 " unrelated resources";
      result.violations.push_back(std::move(v));
    }
  }
  for (const Term& p : rules.inverseFunctional) {
    for (const auto& [o, byP] : sat.in()) {
      auto it = byP.find(p);
      if (it == byP.end() || it->second.size() < 2) continue;
      std::vector<Term> sources(it->second.begin(), it->second.end());
      for (std::size_t i = 0; i < sources.size(); ++i) {
        for (std::size_t j = i + 1; j < sources.size(); ++j) addSame(sources[i], sources[j]);
      }
    }
  }

  for (const auto& d : rules.disjoint) {
    Term a{d.first}, b{d.second};
    auto inA = sat.subjects(typeTerm(), a);
    for (const Term& x : inA) {
      if (!sat.has(x, typeTerm(), b)) continue;
      result.violations.push_back({ViolationKind::kDisjointClasses,
                                   {x},
                                   toNTriples(x) + " is both " + toNTriples(a) + " and " + toNTriples(b),
                                   {Triple{x, typeTerm(), a}, Triple{x, typeTerm(), b}}});
    }
  }
  for (const auto& rc : rules.rangeComplements) {
    Term p{rc.property}, c{rc.cls};
    for (const Term& y : sat.subjects(typeTerm(), c)) {
      for (const Term& x : sat.subjects(p, y)) {
        result.violations.push_back({ViolationKind::kRangeComplement,
                                     {x, y},
                                     toNTriples(y) + " is a " + toNTriples(c) + " but the object of " +
                                         toNTriples(p),
                                     {Triple{x, p, y}, Triple{y, typeTerm(), c}}});
      }
    }
  }

  for (const auto& t : sat.all()) {
    if (!graph.contains(t)) result.derived.insert(t);
  }
  for (const auto& t : identities) {
    if (!graph.contains(t)) result.derived.insert(t);
  }
  std::sort(result.violations.begin(), result.violations.end(), lessViolation);
  return result;
}

std::vector<Violation> validate(const Graph& graph, std::span<const Axiom> axioms, const DimensionRegistry& dims,
                                const ValidateOptions& options) {
  InferenceResult sat = saturate(graph, axioms, dims.core());
  Graph full = graphUnion(graph, sat.derived);
  rdf::TripleIndex fullIndex(full);

  // Part classes, context classes and partOf properties of every dimension
  // and combination of dimensions.
  TermSet partClasses{Term{dims.core().contextualPart()}};
  TermSet contextClasses{Term{dims.core().context()}};
  TermSet partOfProps{Term{dims.core().contextualPartOf()}};
  std::vector<ContextDimension> all = dims.dimensions();
  const auto& registered = dims.dimensions();
  for (std::size_t mask = 1; registered.size() <= 12 && mask < (std::size_t{1} << registered.size()); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<ContextDimension> members;
    for (std::size_t i = 0; i < registered.size(); ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(registered[i]);
    }
    all.push_back(combineDimensions(members, dims.combinedNamespace()));
  }
  for (const auto& d : all) {
    partClasses.insert(Term{d.partClass});
    contextClasses.insert(Term{d.contextClass});
    partOfProps.insert(Term{d.partOfProp});
  }

  std::vector<Violation> out = sat.violations;
  std::set<std::pair<ViolationKind, Term>> seen;
  for (const auto& v : out) seen.emplace(v.kind, v.resources.front());
  std::set<std::pair<Term, Term>> rangeSeen;
  for (const auto& v : out) {
    if (v.kind == ViolationKind::kRangeComplement) rangeSeen.emplace(v.resources[0], v.resources[1]);
  }

  // Two targets of one partOf property, on the asserted graph.
  rdf::TripleIndex asserted(graph);
  for (const Term& p : partOfProps) {
    std::map<Term, TermSet> targets;
    for (const Triple* t : asserted.byPredicate(p)) targets[t->subject()].insert(t->object());
    for (const auto& [s, objs] : targets) {
      if (objs.size() < 2 || !seen.emplace(ViolationKind::kFunctionalConflict, s).second) continue;
      Violation v{ViolationKind::kFunctionalConflict, {s}, "", {}};
      for (const Term& o : objs) {
        v.resources.push_back(o);
        v.triggers.emplace_back(s, p, o);
      }
      v.detail = toNTriples(s) + " has " + std::to_string(objs.size()) + " " + toNTriples(p) + " values";
      out.push_back(std::move(v));
    }
  }

  // Parts without any partOf.
  TermSet parts;
  for (const Term& c : partClasses) {
    for (const Term& x : fullIndex.subjects(typeTerm(), c)) parts.insert(x);
  }
  for (const Term& x : parts) {
    bool hasPartOf = std::any_of(fullIndex.bySubject(x).begin(), fullIndex.bySubject(x).end(),
                                 [&](const Triple* t) { return partOfProps.contains(t->predicate()); });
    if (hasPartOf) continue;
    std::vector<Triple> triggers;
    for (const Triple* t : fullIndex.bySubject(x)) {
      if (t->predicate() == typeTerm() && partClasses.contains(t->object())) triggers.push_back(*t);
    }
    out.push_back({ViolationKind::kMissingPartOf, {x}, toNTriples(x) + " is a contextual part of nothing",
                   std::move(triggers)});
  }

  // partOf into a Context, also without the core axioms loaded.
  for (const Term& p : partOfProps) {
    for (const Triple* t : fullIndex.byPredicate(p)) {
      for (const Term& c : contextClasses) {
        if (!fullIndex.has(t->object(), typeTerm(), c)) continue;
        if (!rangeSeen.emplace(t->subject(), t->object()).second) break;
        out.push_back({ViolationKind::kRangeComplement,
                       {t->subject(), t->object()},
                       toNTriples(t->object()) + " is a " + toNTriples(c) + " but the object of " + toNTriples(p),
                       {*t, Triple{t->object(), typeTerm(), c}}});
        break;
      }
    }
  }

  if (options.sameExtent) {
    PartIndex partIndex(graph, dims, options.contextualize);
    for (const auto& t : graph) {
      if (t.predicate() == typeTerm() || partIndex.isScaffolding(t)) continue;
      if (!partIndex.isPart(t.subject()) || !partIndex.isPart(t.object())) continue;
      for (const auto& d : dims.dimensions()) {
        Term extent{d.extentProp};
        auto a = fullIndex.objects(t.subject(), extent);
        auto b = fullIndex.objects(t.object(), extent);
        if (a.empty() || b.empty()) continue;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a == b) continue;
        Violation v{ViolationKind::kSameExtentRule,
                    {t.subject(), t.object()},
                    "parts linked by " + toNTriples(t.predicate()) + " differ in their " + d.name + " context",
                    {t}};
        for (const Term& x : a) v.triggers.emplace_back(t.subject(), extent, x);
        for (const Term& x : b) v.triggers.emplace_back(t.object(), extent, x);
        out.push_back(std::move(v));
      }
    }
  }

  std::sort(out.begin(), out.end(), lessViolation);
  return out;
}

std::string formatViolations(std::span<const Violation> violations) {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << violationKindName(v.kind);
    for (const auto& r : v.resources) os << ' ' << toNTriples(r);
    os << " : " << v.detail << '\n';
    for (const auto& t : v.triggers) {
      os << "    " << toNTriples(t.subject()) << ' ' << toNTriples(t.predicate()) << ' ' << toNTriples(t.object())
         << " .\n";
    }
  }
  return os.str();
}

std::string violationsToJson(std::span<const Violation> violations) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : violations) {
    nlohmann::json resources = nlohmann::json::array();
    for (const auto& r : v.resources) resources.push_back(toNTriples(r));
    nlohmann::json triggers = nlohmann::json::array();
    for (const auto& t : v.triggers) {
      triggers.push_back({toNTriples(t.subject()), toNTriples(t.predicate()), toNTriples(t.object())});
    }
    list.push_back({{"kind", violationKindName(v.kind)},
                    {"resources", resources},
                    {"detail", v.detail},
                    {"triggers", triggers}});
  }
  nlohmann::json report{{"count", violations.size()}, {"violations", list}};
  return report.dump(2) + "\n";
}

}  // namespace ndfluents
