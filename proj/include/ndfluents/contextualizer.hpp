#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndfluents/rdf/graph.hpp"
#include "ndfluents/vocabulary.hpp"

namespace ndfluents {

class ContextualizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecontextualizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Registered dimensions, in registration order, plus the core vocabulary and
// the namespace that combined dimensions are minted in.
class DimensionRegistry {
 public:
  explicit DimensionRegistry(CoreVocabulary core = CoreVocabulary{},
                             std::string combinedNamespace = std::string(kCombinedNamespace));

  // The registry with temporal and provenance registered.
  static DimensionRegistry standard();

  // Throws VocabularyError on a duplicate name or an IRI shared with an
  // already registered dimension.
  void add(ContextDimension dim);

  // Throws ContextualizeError if `name` is not registered.
  const ContextDimension& get(std::string_view name) const;
  const ContextDimension* find(std::string_view name) const;
  const std::vector<ContextDimension>& dimensions() const { return dims_; }
  const CoreVocabulary& core() const { return core_; }
  const std::string& combinedNamespace() const { return combinedNamespace_; }

  // Combined dimension for the given (registered) names, at least two.
  ContextDimension combined(std::span<const std::string> names) const;

 private:
  CoreVocabulary core_;
  std::string combinedNamespace_;
  std::vector<ContextDimension> dims_;
};

// One context of a statement: the dimension, the Context individual, and
// optionally triples describing it (an interval, an activity, ...).
//
// Identity is (dimension, context); the description is payload and does not
// take part in comparisons.
struct ContextAssignment {
  std::string dimension;
  Iri context;
  rdf::Graph description;

  bool operator==(const ContextAssignment& o) const {
    return dimension == o.dimension && context == o.context;
  }
  std::strong_ordering operator<=>(const ContextAssignment& o) const {
    if (auto c = dimension <=> o.dimension; c != 0) return c;
    return context <=> o.context;
  }
};

struct AnnotatedStatement {
  rdf::Triple base;
  // Sorted by dimension, one entry per dimension, non-empty.
  std::vector<ContextAssignment> contexts;

  AnnotatedStatement(rdf::Triple base, std::vector<ContextAssignment> contexts);

  bool operator==(const AnnotatedStatement&) const = default;
  std::strong_ordering operator<=>(const AnnotatedStatement&) const;
};

std::ostream& operator<<(std::ostream& os, const AnnotatedStatement& s);

struct CombinationModel {
  enum class Kind { kContextsInContext, kMultiContextPart, kCombinedExtent };

  Kind kind = Kind::kMultiContextPart;
  // Dimension names, outermost first. Only used by ContextsInContext.
  std::vector<std::string> nesting;

  static CombinationModel contextsInContext(std::vector<std::string> nesting) {
    return {Kind::kContextsInContext, std::move(nesting)};
  }
  static CombinationModel multiContextPart() { return {Kind::kMultiContextPart, {}}; }
  static CombinationModel combinedExtent() { return {Kind::kCombinedExtent, {}}; }
};

// "contexts-in-context", "multi-context-part", "combined-extent".
std::string modelName(CombinationModel::Kind kind);
CombinationModel::Kind modelFromName(std::string_view name);

struct MintingPolicy {
  enum class Mode { kSuffix, kHash };

  Mode mode = Mode::kSuffix;
  std::string separator = "@";
};

enum class PredicateMode {
  // Mint (or look up) a related contextual property per base predicate.
  kRelated,
  // Use the base predicate itself between parts.
  kKeepBase,
};

struct ContextualizeOptions {
  CombinationModel model;
  MintingPolicy minting;
  PredicateMode predicates = PredicateMode::kRelated;
  // User-supplied related properties, original -> contextual.
  std::map<Iri, Iri> relatedProperties;
  // Namespace for combined Context individuals and their member links.
  std::string combinedContextNamespace = "http://purl.org/NET/ndfluents/ctx#";
};

// Stable 64-bit FNV-1a digest, hex encoded.
std::string stableDigest(std::string_view data);

// Mints the contextual part of `entity` for `contexts`, which are taken in
// the given order. Suffix mode appends the contexts' local names
// (`ex:Paris@year508`); hash mode appends a digest of the dimension/context
// pairs and `modelTag`.
Iri mintPart(const Iri& entity, std::span<const ContextAssignment> contexts, const MintingPolicy& policy,
             std::string_view modelTag = "");

// The predicate used between parts for `base` under `options`.
Iri contextualPredicate(const Iri& base, const ContextualizeOptions& options);

// Inverse of contextualPredicate.
Iri originalPredicate(const Iri& contextual, const ContextualizeOptions& options);

// The predicate linking a combined Context individual to its members.
Iri combinedMemberPredicate(const ContextualizeOptions& options);

rdf::Graph contextualize(std::span<const AnnotatedStatement> statements, const DimensionRegistry& dims,
                         const ContextualizeOptions& options);

// Maps every statement between contextual parts back to its base triple and
// the contexts collected along each part's contextualPartOf chain. With a
// selection, only statements whose contexts intersect it are returned.
// Descriptions are not recovered. The result is sorted and duplicate-free.
std::vector<AnnotatedStatement> decontextualize(const rdf::Graph& graph, const DimensionRegistry& dims,
                                                const ContextualizeOptions& options,
                                                const std::optional<std::set<Iri>>& selection = std::nullopt);

// Recognizes the contextual parts of registered dimensions (and of every
// combination of them) in a graph, and resolves each part to its base entity
// and the contexts found along its contextualPartOf chain. The graph must
// outlive the index.
class PartIndex {
 public:
  struct Resolved {
    rdf::Term entity;
    std::map<std::string, Iri> contexts;
    // The part itself first, then its ancestors.
    std::vector<rdf::Term> chain;
  };

  PartIndex(const rdf::Graph& graph, const DimensionRegistry& dims, const ContextualizeOptions& options = {});

  bool isPart(const rdf::Term& t) const;
  // Part typing, partOf and extent triples.
  bool isScaffolding(const rdf::Triple& t) const;
  // Throws DecontextualizeError on a part with zero or several partOf
  // targets, no extent, or conflicting contexts along the chain.
  const Resolved& resolve(const rdf::Term& part) const;
  // Contexts a part points at directly, including the members of a combined
  // context and the combined context itself.
  std::vector<rdf::Term> extentTargets(const rdf::Term& part) const;
  const rdf::TripleIndex& index() const { return index_; }

 private:
  struct Known {
    ContextDimension dim;
    std::vector<ContextDimension> members;  // empty for registered dimensions
  };

  const rdf::Term& partOfTarget(const rdf::Term& part) const;
  std::map<std::string, Iri> directContexts(const rdf::Term& part) const;

  rdf::TripleIndex index_;
  rdf::Term member_;
  std::vector<Known> known_;
  std::map<rdf::Term, std::size_t> partOf_;
  std::map<rdf::Term, std::size_t> extent_;
  std::set<rdf::Term> partClasses_;
  rdf::Term corePartOf_;
  mutable std::map<rdf::Term, Resolved> cache_;
};

// Standard reification: 4 triples per statement plus one per context.
rdf::Graph encodeReification(std::span<const AnnotatedStatement> statements, const DimensionRegistry& dims,
                             const MintingPolicy& policy = {});

// Singleton properties: the rewritten triple, its singletonPropertyOf link,
// and one triple per context.
rdf::Graph encodeSingleton(std::span<const AnnotatedStatement> statements, const DimensionRegistry& dims,
                           const MintingPolicy& policy = {});

struct SizeRow {
  std::string pattern;
  std::string model;
  std::size_t triples;

  bool operator==(const SizeRow&) const = default;
};

// Triple counts of the statements under every NdFluents model and both
// baselines. Predicates are kept as-is; ContextsInContext nests in
// registration order.
std::vector<SizeRow> sizeReport(std::span<const AnnotatedStatement> statements, const DimensionRegistry& dims);

}  // namespace ndfluents
