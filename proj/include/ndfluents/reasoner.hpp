#pragma once

#include <span>
#include <string>
#include <vector>

#include "ndfluents/contextualizer.hpp"
#include "ndfluents/rdf/graph.hpp"
#include "ndfluents/vocabulary.hpp"

namespace ndfluents {

enum class ViolationKind {
  kDisjointClasses,
  kFunctionalConflict,
  kMissingPartOf,
  kRangeComplement,
  kSameExtentRule,
};

std::string violationKindName(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<rdf::Term> resources;
  std::string detail;
  // The triples that triggered the violation.
  std::vector<rdf::Triple> triggers;

  bool operator==(const Violation&) const = default;
};

struct InferenceResult {
  // Triples not in the input, including both directions of every sameAs.
  rdf::Graph derived;
  std::vector<Violation> violations;

  // Unordered sameAs pairs in `derived`, each reported once (smaller first).
  std::vector<std::pair<rdf::Term, rdf::Term>> sameAsPairs() const;
};

const Iri& owlSameAs();

// Forward chaining to fixpoint over the axioms' ABox consequences:
// subclass and subproperty propagation, domain and range typing, transitive
// closure, functional and inverse-functional identity, and the AllValuesFrom
// domain/range rules. Functional conflicts on core.contextualPartOf become
// FunctionalConflict violations instead of sameAs pairs, unless one target
// is contextualPartOf the other. Disjointness and range-complement clashes are
// reported after the fixpoint.
InferenceResult saturate(const rdf::Graph& graph, std::span<const Axiom> axioms,
                         const CoreVocabulary& core = CoreVocabulary{});

struct ValidateOptions {
  // Parts linked by a contextual statement must share their context in
  // every dimension both of them have.
  bool sameExtent = false;
  ContextualizeOptions contextualize;
};

std::vector<Violation> validate(const rdf::Graph& graph, std::span<const Axiom> axioms,
                                const DimensionRegistry& dims, const ValidateOptions& options = {});

// One line per violation: `KIND resources... : detail`, followed by the
// triggering triples indented.
std::string formatViolations(std::span<const Violation> violations);

// {"violations": [{"kind", "resources", "detail", "triggers"}], "count": N}
std::string violationsToJson(std::span<const Violation> violations);

}  // namespace ndfluents
