#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ndfluents/rdf/graph.hpp"

namespace ndfluents {

using rdf::Iri;

class VocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kNdFluentsNamespace = "http://purl.org/NET/ndfluents#";
inline constexpr std::string_view kFourDFluentsNamespace = "http://purl.org/NET/ndfluents/4dFluents#";
inline constexpr std::string_view kProvenanceNamespace = "http://purl.org/NET/ndfluents/provenance#";
inline constexpr std::string_view kCombinedNamespace = "http://purl.org/NET/ndfluents/combined#";

// The fixed terms every dimension module specializes.
class CoreVocabulary {
 public:
  explicit CoreVocabulary(std::string ns = std::string(kNdFluentsNamespace));

  const std::string& ns() const { return ns_; }
  const Iri& context() const { return context_; }
  const Iri& contextualPart() const { return contextualPart_; }
  const Iri& contextualProperty() const { return contextualProperty_; }
  const Iri& contextualExtent() const { return contextualExtent_; }
  const Iri& contextualPartOf() const { return contextualPartOf_; }
  const Iri& contextualDatatypeProperty() const { return contextualDatatypeProperty_; }

 private:
  std::string ns_;
  Iri context_;
  Iri contextualPart_;
  Iri contextualProperty_;
  Iri contextualExtent_;
  Iri contextualPartOf_;
  Iri contextualDatatypeProperty_;
};

// The generated vocabulary of one context dimension (temporal, provenance,
// trust, ...).
struct ContextDimension {
  std::string name;
  Iri partClass;
  Iri contextClass;
  Iri partOfProp;
  Iri extentProp;
  Iri contextualProp;
  Iri contextualDataProp;

  // Throws VocabularyError if the name is empty or any two IRIs coincide.
  void validate() const;

  auto operator<=>(const ContextDimension&) const = default;
};

// Conventional names under `ns`: for "trust" that is TrustPart, TrustContext,
// trustPartOf, trustExtent, trustProperty, trustDataProperty.
ContextDimension makeDimension(const std::string& name, std::string_view ns);

// The 4dFluents terms: TemporalPart, Interval, temporalPartOf,
// temporalExtent, fluentProperty, fluentDataTypeProperty.
ContextDimension temporalDimension(std::string_view ns = kFourDFluentsNamespace);

// ProvenancePart, Provenance, provenancePartOf, provenanceExtent,
// provenanceProperty, provenanceDataProperty.
ContextDimension provenanceDimension(std::string_view ns = kProvenanceNamespace);

// The combined dimension for a set of at least two dimensions. Names are
// sorted, so the result does not depend on input order: {temporal,
// provenance} yields `<ns>Provenance_TemporalPart` and friends.
ContextDimension combineDimensions(std::span<const ContextDimension> dims,
                                   std::string_view ns = kCombinedNamespace);

enum class EntityKind { kClass, kObjectProperty, kDataProperty };
enum class PropertyKind { kObject, kData };

namespace axiom {
struct SubClassOf {
  Iri subClass;
  Iri superClass;
  auto operator<=>(const SubClassOf&) const = default;
};
struct SubPropertyOf {
  Iri subProperty;
  Iri superProperty;
  PropertyKind kind = PropertyKind::kObject;
  auto operator<=>(const SubPropertyOf&) const = default;
};
struct Domain {
  Iri property;
  Iri cls;
  auto operator<=>(const Domain&) const = default;
};
struct Range {
  Iri property;
  Iri cls;
  auto operator<=>(const Range&) const = default;
};
// Range is the complement of `cls`.
struct RangeComplementOf {
  Iri property;
  Iri cls;
  auto operator<=>(const RangeComplementOf&) const = default;
};
struct Functional {
  Iri property;
  auto operator<=>(const Functional&) const = default;
};
struct InverseFunctional {
  Iri property;
  auto operator<=>(const InverseFunctional&) const = default;
};
struct Transitive {
  Iri property;
  auto operator<=>(const Transitive&) const = default;
};
struct DisjointClasses {
  Iri first;
  Iri second;
  auto operator<=>(const DisjointClasses&) const = default;
};
// Domain of `property` is "all `via` values are in `cls`".
struct AllValuesFromDomain {
  Iri property;
  Iri via;
  Iri cls;
  auto operator<=>(const AllValuesFromDomain&) const = default;
};
// Range of `property` is "all `via` values are in `cls`".
struct AllValuesFromRange {
  Iri property;
  Iri via;
  Iri cls;
  auto operator<=>(const AllValuesFromRange&) const = default;
};
struct Declaration {
  Iri entity;
  EntityKind kind;
  auto operator<=>(const Declaration&) const = default;
};
}  // namespace axiom

using Axiom = std::variant<axiom::SubClassOf, axiom::SubPropertyOf, axiom::Domain, axiom::Range,
                           axiom::RangeComplementOf, axiom::Functional, axiom::InverseFunctional,
                           axiom::Transitive, axiom::DisjointClasses, axiom::AllValuesFromDomain,
                           axiom::AllValuesFromRange, axiom::Declaration>;

// Functional-syntax-like rendering, e.g. `SubClassOf(<a> <b>)`.
std::string toString(const Axiom& axiom);

// Declarations, disjointness of Context and ContextualPart, and the domains,
// ranges and functionality of the three core properties. Functional
// contextualExtent is deliberately absent; see functionalExtentAxiom().
std::vector<Axiom> coreAxioms(const CoreVocabulary& core = CoreVocabulary{});

// Declaration and domain of contextualDatatypeProperty.
std::vector<Axiom> datatypeAxioms(const CoreVocabulary& core = CoreVocabulary{});

// Ties a dimension's classes and properties under the core vocabulary.
std::vector<Axiom> dimensionModule(const ContextDimension& dim,
                                   const CoreVocabulary& core = CoreVocabulary{});

// Restricts the dimension's contextual object and datatype properties to
// parts of that dimension.
std::vector<Axiom> dimensionRestrictionAxioms(const ContextDimension& dim,
                                              const CoreVocabulary& core = CoreVocabulary{});

// contextualPartOf is transitive. Needed when parts are nested.
Axiom transitivityAxiom(const CoreVocabulary& core = CoreVocabulary{});

// contextualExtent is functional. Needed when one extent combines contexts.
Axiom functionalExtentAxiom(const CoreVocabulary& core = CoreVocabulary{});

// Makes the combined dimension's classes and properties specializations of
// each member's. Throws VocabularyError for fewer than two members.
std::vector<Axiom> combinedDimensionModule(std::span<const ContextDimension> dims,
                                           const ContextDimension& combined);

// A fresh property standing in for `original` on contextual parts: its
// domain and range constrain the entities the parts belong to rather than
// the parts themselves.
std::vector<Axiom> relatedContextualProperty(const Iri& original, const Iri& contextual,
                                             const std::optional<Iri>& domainClass,
                                             const std::optional<Iri>& rangeClass,
                                             const Iri& fluentSuper,
                                             const CoreVocabulary& core = CoreVocabulary{});

// RDFS/OWL encoding. Restrictions and complements become blank nodes.
rdf::Graph axiomsToGraph(std::span<const Axiom> axioms);

// Inverse of axiomsToGraph. Triples that encode no supported axiom are
// ignored. A SubPropertyOf is a data-property axiom iff its sub-property is
// declared owl:DatatypeProperty in the same graph.
std::vector<Axiom> axiomsFromGraph(const rdf::Graph& graph);

}  // namespace ndfluents
