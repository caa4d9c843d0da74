#include "ndfluents/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace ndfluents {

using rdf::Term;
using rdf::vocab;

CoreVocabulary::CoreVocabulary(std::string ns)
    : ns_(std::move(ns)),
      context_(vocab(ns_, "Context")),
      contextualPart_(vocab(ns_, "ContextualPart")),
      contextualProperty_(vocab(ns_, "contextualProperty")),
      contextualExtent_(vocab(ns_, "contextualExtent")),
      contextualPartOf_(vocab(ns_, "contextualPartOf")),
      contextualDatatypeProperty_(vocab(ns_, "contextualDatatypeProperty")) {}

void ContextDimension::validate() const {
  if (name.empty()) throw VocabularyError("context dimension without a name");
  std::set<Iri> seen;
  for (const Iri* iri : {&partClass, &contextClass, &partOfProp, &extentProp, &contextualProp,
                         &contextualDataProp}) {
    if (iri->empty()) throw VocabularyError("dimension '" + name + "' has an empty IRI");
    if (!seen.insert(*iri).second) {
      throw VocabularyError("dimension '" + name + "' reuses IRI " + iri->str());
    }
  }
}

namespace {

std::string capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

}  // namespace

ContextDimension makeDimension(const std::string& name, std::string_view ns) {
  auto cap = capitalize(name);
  ContextDimension dim{name,
                       vocab(ns, cap + "Part"),
                       vocab(ns, cap + "Context"),
                       vocab(ns, name + "PartOf"),
                       vocab(ns, name + "Extent"),
                       vocab(ns, name + "Property"),
                       vocab(ns, name + "DataProperty")};
  dim.validate();
  return dim;
}

ContextDimension temporalDimension(std::string_view ns) {
  return {"temporal",
          vocab(ns, "TemporalPart"),
          vocab(ns, "Interval"),
          vocab(ns, "temporalPartOf"),
          vocab(ns, "temporalExtent"),
          vocab(ns, "fluentProperty"),
          vocab(ns, "fluentDataTypeProperty")};
}

ContextDimension provenanceDimension(std::string_view ns) {
  auto dim = makeDimension("provenance", ns);
  dim.contextClass = vocab(ns, "Provenance");
  return dim;
}

ContextDimension combineDimensions(std::span<const ContextDimension> dims, std::string_view ns) {
  if (dims.size() < 2) throw VocabularyError("a combined dimension needs at least two dimensions");
  std::vector<std::string> names;
  for (const auto& d : dims) names.push_back(d.name);
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw VocabularyError("duplicate dimension in combination");
  }
  std::string lower;
  std::string upper;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) {
      lower += '_';
      upper += '_';
    }
    lower += names[i];
    upper += capitalize(names[i]);
  }
  ContextDimension dim{lower,
                       vocab(ns, upper + "Part"),
                       vocab(ns, upper + "Context"),
                       vocab(ns, lower + "PartOf"),
                       vocab(ns, lower + "Extent"),
                       vocab(ns, lower + "Property"),
                       vocab(ns, lower + "DataProperty")};
  dim.validate();
  return dim;
}

// ---------------------------------------------------------------------------

namespace {

std::string show(const Iri& iri) { return "<" + iri.str() + ">"; }

const char* entityKindName(EntityKind k) {
  switch (k) {
    case EntityKind::kClass: return "Class";
    case EntityKind::kObjectProperty: return "ObjectProperty";
    case EntityKind::kDataProperty: return "DataProperty";
  }
  return "";
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Keeps first occurrences, preserving order.
std::vector<Axiom> dedupe(std::vector<Axiom> axioms) {
  std::set<Axiom> seen;
  std::vector<Axiom> out;
  for (auto& a : axioms) {
    if (seen.insert(a).second) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

std::string toString(const Axiom& axiom) {
  using namespace axiom;
  return std::visit(
      Overloaded{
          [](const SubClassOf& a) { return "SubClassOf(" + show(a.subClass) + " " + show(a.superClass) + ")"; },
          [](const SubPropertyOf& a) {
            return std::string(a.kind == PropertyKind::kData ? "SubDataPropertyOf(" : "SubObjectPropertyOf(") +
                   show(a.subProperty) + " " + show(a.superProperty) + ")";
          },
          [](const Domain& a) { return "PropertyDomain(" + show(a.property) + " " + show(a.cls) + ")"; },
          [](const Range& a) { return "PropertyRange(" + show(a.property) + " " + show(a.cls) + ")"; },
          [](const RangeComplementOf& a) {
            return "PropertyRange(" + show(a.property) + " ObjectComplementOf(" + show(a.cls) + "))";
          },
          [](const Functional& a) { return "FunctionalProperty(" + show(a.property) + ")"; },
          [](const InverseFunctional& a) { return "InverseFunctionalProperty(" + show(a.property) + ")"; },
          [](const Transitive& a) { return "TransitiveProperty(" + show(a.property) + ")"; },
          [](const DisjointClasses& a) {
            return "DisjointClasses(" + show(a.first) + " " + show(a.second) + ")";
          },
          [](const AllValuesFromDomain& a) {
            return "PropertyDomain(" + show(a.property) + " ObjectAllValuesFrom(" + show(a.via) + " " +
                   show(a.cls) + "))";
          },
          [](const AllValuesFromRange& a) {
            return "PropertyRange(" + show(a.property) + " ObjectAllValuesFrom(" + show(a.via) + " " +
                   show(a.cls) + "))";
          },
          [](const Declaration& a) {
            return std::string("Declaration(") + entityKindName(a.kind) + "(" + show(a.entity) + "))";
          },
      },
      axiom);
}

std::vector<Axiom> coreAxioms(const CoreVocabulary& core) {
  using namespace axiom;
  return {
      Declaration{core.context(), EntityKind::kClass},
      Declaration{core.contextualPart(), EntityKind::kClass},
      DisjointClasses{core.context(), core.contextualPart()},

      Declaration{core.contextualProperty(), EntityKind::kObjectProperty},
      Domain{core.contextualProperty(), core.contextualPart()},
      Range{core.contextualProperty(), core.contextualPart()},

      Declaration{core.contextualExtent(), EntityKind::kObjectProperty},
      Domain{core.contextualExtent(), core.contextualPart()},
      Range{core.contextualExtent(), core.context()},

      Declaration{core.contextualPartOf(), EntityKind::kObjectProperty},
      Functional{core.contextualPartOf()},
      Domain{core.contextualPartOf(), core.contextualPart()},
      RangeComplementOf{core.contextualPartOf(), core.context()},
  };
}

std::vector<Axiom> datatypeAxioms(const CoreVocabulary& core) {
  using namespace axiom;
  return {
      Declaration{core.contextualDatatypeProperty(), EntityKind::kDataProperty},
      Domain{core.contextualDatatypeProperty(), core.contextualPart()},
  };
}

std::vector<Axiom> dimensionModule(const ContextDimension& dim, const CoreVocabulary& core) {
  dim.validate();
  using namespace axiom;
  return {
      Declaration{dim.contextClass, EntityKind::kClass},
      SubClassOf{dim.contextClass, core.context()},
      Declaration{dim.partClass, EntityKind::kClass},
      SubClassOf{dim.partClass, core.contextualPart()},

      Declaration{dim.extentProp, EntityKind::kObjectProperty},
      SubPropertyOf{dim.extentProp, core.contextualExtent(), PropertyKind::kObject},
      Domain{dim.extentProp, dim.partClass},
      Range{dim.extentProp, dim.contextClass},

      Declaration{dim.partOfProp, EntityKind::kObjectProperty},
      SubPropertyOf{dim.partOfProp, core.contextualPartOf(), PropertyKind::kObject},
      Domain{dim.partOfProp, dim.partClass},
  };
}

std::vector<Axiom> dimensionRestrictionAxioms(const ContextDimension& dim, const CoreVocabulary& core) {
  dim.validate();
  using namespace axiom;
  return {
      Declaration{dim.contextualProp, EntityKind::kObjectProperty},
      SubPropertyOf{dim.contextualProp, core.contextualProperty(), PropertyKind::kObject},
      Domain{dim.contextualProp, dim.partClass},
      Range{dim.contextualProp, dim.partClass},

      Declaration{dim.contextualDataProp, EntityKind::kDataProperty},
      SubPropertyOf{dim.contextualDataProp, core.contextualDatatypeProperty(), PropertyKind::kData},
      Domain{dim.contextualDataProp, dim.partClass},
  };
}

Axiom transitivityAxiom(const CoreVocabulary& core) { return axiom::Transitive{core.contextualPartOf()}; }

Axiom functionalExtentAxiom(const CoreVocabulary& core) {
  return axiom::Functional{core.contextualExtent()};
}

std::vector<Axiom> combinedDimensionModule(std::span<const ContextDimension> dims,
                                           const ContextDimension& combined) {
  if (dims.size() < 2) throw VocabularyError("a combined dimension needs at least two dimensions");
  combined.validate();
  using namespace axiom;
  std::vector<Axiom> out = {
      Declaration{combined.partClass, EntityKind::kClass},
      Declaration{combined.contextClass, EntityKind::kClass},
      Declaration{combined.extentProp, EntityKind::kObjectProperty},
      Declaration{combined.partOfProp, EntityKind::kObjectProperty},
      Domain{combined.extentProp, combined.partClass},
      Range{combined.extentProp, combined.contextClass},
  };
  std::vector<const ContextDimension*> sorted;
  for (const auto& d : dims) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(),
            [](const ContextDimension* a, const ContextDimension* b) { return a->name < b->name; });
  for (const ContextDimension* d : sorted) {
    out.push_back(SubClassOf{combined.partClass, d->partClass});
    out.push_back(SubClassOf{combined.contextClass, d->contextClass});
    out.push_back(SubPropertyOf{combined.extentProp, d->extentProp, PropertyKind::kObject});
    out.push_back(SubPropertyOf{combined.partOfProp, d->partOfProp, PropertyKind::kObject});
  }
  return dedupe(std::move(out));
}

std::vector<Axiom> relatedContextualProperty(const Iri& original, const Iri& contextual,
                                             const std::optional<Iri>& domainClass,
                                             const std::optional<Iri>& rangeClass,
                                             const Iri& fluentSuper, const CoreVocabulary& core) {
  if (original == contextual) {
    throw VocabularyError("related contextual property must differ from " + original.str());
  }
  using namespace axiom;
  std::vector<Axiom> out = {SubPropertyOf{contextual, fluentSuper, PropertyKind::kObject}};
  if (domainClass) out.push_back(AllValuesFromDomain{contextual, core.contextualPartOf(), *domainClass});
  if (rangeClass) out.push_back(AllValuesFromRange{contextual, core.contextualPartOf(), *rangeClass});
  return out;
}

// ---------------------------------------------------------------------------
// RDF encoding

namespace {

struct OwlTerms {
  Term type{rdf::vocabulary::rdfType()};
  Term subClassOf{vocab(rdf::ns::kRdfs, "subClassOf")};
  Term subPropertyOf{vocab(rdf::ns::kRdfs, "subPropertyOf")};
  Term domain{vocab(rdf::ns::kRdfs, "domain")};
  Term range{vocab(rdf::ns::kRdfs, "range")};
  Term owlClass{vocab(rdf::ns::kOwl, "Class")};
  Term objectProperty{vocab(rdf::ns::kOwl, "ObjectProperty")};
  Term datatypeProperty{vocab(rdf::ns::kOwl, "DatatypeProperty")};
  Term functional{vocab(rdf::ns::kOwl, "FunctionalProperty")};
  Term inverseFunctional{vocab(rdf::ns::kOwl, "InverseFunctionalProperty")};
  Term transitive{vocab(rdf::ns::kOwl, "TransitiveProperty")};
  Term disjointWith{vocab(rdf::ns::kOwl, "disjointWith")};
  Term complementOf{vocab(rdf::ns::kOwl, "complementOf")};
  Term restriction{vocab(rdf::ns::kOwl, "Restriction")};
  Term onProperty{vocab(rdf::ns::kOwl, "onProperty")};
  Term allValuesFrom{vocab(rdf::ns::kOwl, "allValuesFrom")};
};

const OwlTerms& owl() {
  static const OwlTerms terms;
  return terms;
}

}  // namespace

rdf::Graph axiomsToGraph(std::span<const Axiom> axioms) {
  using namespace axiom;
  const auto& o = owl();
  rdf::Graph g;
  std::size_t blanks = 0;
  auto freshBlank = [&] { return Term::blank("r" + std::to_string(blanks++)); };
  auto restriction = [&](const Iri& via, const Iri& cls) {
    Term node = freshBlank();
    g.insert(node, o.type, o.restriction);
    g.insert(node, o.onProperty, via);
    g.insert(node, o.allValuesFrom, cls);
    return node;
  };
  for (const auto& axiom : axioms) {
    std::visit(
        Overloaded{
            [&](const SubClassOf& a) { g.insert(a.subClass, o.subClassOf, a.superClass); },
            [&](const SubPropertyOf& a) { g.insert(a.subProperty, o.subPropertyOf, a.superProperty); },
            [&](const Domain& a) { g.insert(a.property, o.domain, a.cls); },
            [&](const Range& a) { g.insert(a.property, o.range, a.cls); },
            [&](const RangeComplementOf& a) {
              Term node = freshBlank();
              g.insert(node, o.type, o.owlClass);
              g.insert(node, o.complementOf, a.cls);
              g.insert(a.property, o.range, node);
            },
            [&](const Functional& a) { g.insert(a.property, o.type, o.functional); },
            [&](const InverseFunctional& a) { g.insert(a.property, o.type, o.inverseFunctional); },
            [&](const Transitive& a) { g.insert(a.property, o.type, o.transitive); },
            [&](const DisjointClasses& a) { g.insert(a.first, o.disjointWith, a.second); },
            [&](const AllValuesFromDomain& a) { g.insert(a.property, o.domain, restriction(a.via, a.cls)); },
            [&](const AllValuesFromRange& a) { g.insert(a.property, o.range, restriction(a.via, a.cls)); },
            [&](const Declaration& a) {
              const Term& kind = a.kind == EntityKind::kClass            ? o.owlClass
                                 : a.kind == EntityKind::kObjectProperty ? o.objectProperty
                                                                         : o.datatypeProperty;
              g.insert(a.entity, o.type, kind);
            },
        },
        axiom);
  }
  return g;
}

std::vector<Axiom> axiomsFromGraph(const rdf::Graph& graph) {
  using namespace axiom;
  const auto& o = owl();
  rdf::TripleIndex index(graph);
  auto single = [&](const Term& s, const Term& p) -> std::optional<Term> {
    auto values = index.objects(s, p);
    if (values.size() != 1) return std::nullopt;
    return values.front();
  };
  auto isDataProperty = [&](const Term& p) { return index.has(p, o.type, o.datatypeProperty); };

  // Restriction and complement nodes, keyed by blank node.
  struct Restriction {
    Iri via;
    Iri cls;
  };
  std::map<Term, Restriction> restrictions;
  std::map<Term, Iri> complements;
  for (const auto& t : graph) {
    if (!t.subject().isBlank() || t.predicate() != o.type) continue;
    if (t.object() == o.restriction) {
      auto via = single(t.subject(), o.onProperty);
      auto cls = single(t.subject(), o.allValuesFrom);
      if (via && cls && via->isIri() && cls->isIri()) {
        restrictions.emplace(t.subject(), Restriction{via->asIri(), cls->asIri()});
      }
    } else if (t.object() == o.owlClass) {
      auto cls = single(t.subject(), o.complementOf);
      if (cls && cls->isIri()) complements.emplace(t.subject(), cls->asIri());
    }
  }

  std::vector<Axiom> out;
  for (const auto& t : graph) {
    if (!t.subject().isIri()) continue;
    Iri s = t.subject().asIri();
    const Term& p = t.predicate();
    const Term& obj = t.object();
    if (p == o.type && obj.isIri()) {
      if (obj == o.owlClass) out.push_back(Declaration{s, EntityKind::kClass});
      else if (obj == o.objectProperty) out.push_back(Declaration{s, EntityKind::kObjectProperty});
      else if (obj == o.datatypeProperty) out.push_back(Declaration{s, EntityKind::kDataProperty});
      else if (obj == o.functional) out.push_back(Functional{s});
      else if (obj == o.inverseFunctional) out.push_back(InverseFunctional{s});
      else if (obj == o.transitive) out.push_back(Transitive{s});
    } else if (p == o.subClassOf && obj.isIri()) {
      out.push_back(SubClassOf{s, obj.asIri()});
    } else if (p == o.subPropertyOf && obj.isIri()) {
      out.push_back(SubPropertyOf{s, obj.asIri(),
                                  isDataProperty(t.subject()) ? PropertyKind::kData : PropertyKind::kObject});
    } else if (p == o.disjointWith && obj.isIri()) {
      out.push_back(DisjointClasses{s, obj.asIri()});
    } else if (p == o.domain) {
      if (obj.isIri()) {
        out.push_back(Domain{s, obj.asIri()});
      } else if (auto it = restrictions.find(obj); it != restrictions.end()) {
        out.push_back(AllValuesFromDomain{s, it->second.via, it->second.cls});
      }
    } else if (p == o.range) {
      if (obj.isIri()) {
        out.push_back(Range{s, obj.asIri()});
      } else if (auto it = restrictions.find(obj); it != restrictions.end()) {
        out.push_back(AllValuesFromRange{s, it->second.via, it->second.cls});
      } else if (auto c = complements.find(obj); c != complements.end()) {
        out.push_back(RangeComplementOf{s, c->second});
      }
    }
  }
  return dedupe(std::move(out));
}

}  // namespace ndfluents
