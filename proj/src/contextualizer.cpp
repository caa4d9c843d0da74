#include "ndfluents/contextualizer.hpp"

#include <algorithm>
#include <cstdio>
#include <bit>
#include <sstream>

namespace ndfluents {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

// ---------------------------------------------------------------------------
// Registry and statement types

DimensionRegistry::DimensionRegistry(CoreVocabulary core, std::string combinedNamespace)
    : core_(std::move(core)), combinedNamespace_(std::move(combinedNamespace)) {}

DimensionRegistry DimensionRegistry::standard() {
  DimensionRegistry registry;
  registry.add(temporalDimension());
  registry.add(provenanceDimension());
  return registry;
}

void DimensionRegistry::add(ContextDimension dim) {
  dim.validate();
  for (const auto& d : dims_) {
    if (d.name == dim.name) throw VocabularyError("dimension '" + dim.name + "' registered twice");
    for (const Iri* a : {&d.partClass, &d.contextClass, &d.partOfProp, &d.extentProp, &d.contextualProp,
                         &d.contextualDataProp}) {
      for (const Iri* b : {&dim.partClass, &dim.contextClass, &dim.partOfProp, &dim.extentProp,
                           &dim.contextualProp, &dim.contextualDataProp}) {
        if (*a == *b) {
          throw VocabularyError("dimensions '" + d.name + "' and '" + dim.name + "' share " + a->str());
        }
      }
    }
  }
  dims_.push_back(std::move(dim));
}

const ContextDimension* DimensionRegistry::find(std::string_view name) const {
  for (const auto& d : dims_) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

const ContextDimension& DimensionRegistry::get(std::string_view name) const {
  if (const auto* d = find(name)) return *d;
  throw ContextualizeError("unregistered dimension '" + std::string(name) + "'");
}

ContextDimension DimensionRegistry::combined(std::span<const std::string> names) const {
  std::vector<ContextDimension> members;
  for (const auto& n : names) members.push_back(get(n));
  return combineDimensions(members, combinedNamespace_);
}

AnnotatedStatement::AnnotatedStatement(rdf::Triple b, std::vector<ContextAssignment> c)
    : base(std::move(b)), contexts(std::move(c)) {
  std::sort(contexts.begin(), contexts.end());
  for (std::size_t i = 1; i < contexts.size(); ++i) {
    if (contexts[i].dimension == contexts[i - 1].dimension) {
      throw ContextualizeError("statement has two contexts in dimension '" + contexts[i].dimension + "'");
    }
  }
}

std::strong_ordering AnnotatedStatement::operator<=>(const AnnotatedStatement& o) const {
  if (auto c = base <=> o.base; c != 0) return c;
  return std::lexicographical_compare_three_way(contexts.begin(), contexts.end(), o.contexts.begin(),
                                                o.contexts.end());
}

std::ostream& operator<<(std::ostream& os, const AnnotatedStatement& s) {
  os << s.base << " {";
  for (std::size_t i = 0; i < s.contexts.size(); ++i) {
    os << (i ? ", " : "") << s.contexts[i].dimension << ": " << s.contexts[i].context;
  }
  return os << "}";
}

std::string modelName(CombinationModel::Kind kind) {
  switch (kind) {
    case CombinationModel::Kind::kContextsInContext: return "contexts-in-context";
    case CombinationModel::Kind::kMultiContextPart: return "multi-context-part";
    case CombinationModel::Kind::kCombinedExtent: return "combined-extent";
  }
  return "";
}

CombinationModel::Kind modelFromName(std::string_view name) {
  for (auto k : {CombinationModel::Kind::kContextsInContext, CombinationModel::Kind::kMultiContextPart,
                 CombinationModel::Kind::kCombinedExtent}) {
    if (modelName(k) == name) return k;
  }
  throw std::invalid_argument("unknown combination model '" + std::string(name) +
                              "' (expected contexts-in-context, multi-context-part or combined-extent)");
}

// ---------------------------------------------------------------------------
// Minting

std::string stableDigest(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string contextKey(std::span<const ContextAssignment> contexts) {
  std::string key;
  for (const auto& c : contexts) {
    key += c.dimension;
    key += '\x1f';
    key += c.context.str();
    key += '\x1e';
  }
  return key;
}

}  // namespace

Iri mintPart(const Iri& entity, std::span<const ContextAssignment> contexts, const MintingPolicy& policy,
             std::string_view modelTag) {
  if (contexts.empty()) throw ContextualizeError("cannot mint a part without contexts");
  std::string iri = entity.str();
  if (policy.mode == MintingPolicy::Mode::kSuffix) {
    for (const auto& c : contexts) {
      iri += policy.separator;
      iri += c.context.localName();
    }
  } else {
    iri += policy.separator;
    iri += 'h';
    iri += stableDigest(entity.str() + '\x1d' + contextKey(contexts) + std::string(modelTag));
  }
  return Iri{std::move(iri)};
}

namespace {

constexpr std::string_view kRelatedFragment = "#contextual";
constexpr std::string_view kRelatedSuffix = "_contextual";

}  // namespace

Iri contextualPredicate(const Iri& base, const ContextualizeOptions& options) {
  if (options.predicates == PredicateMode::kKeepBase || base == rdf::vocabulary::rdfType()) return base;
  if (auto it = options.relatedProperties.find(base); it != options.relatedProperties.end()) return it->second;
  bool hasFragment = base.str().find('#') != std::string::npos;
  return Iri{base.str() + std::string(hasFragment ? kRelatedSuffix : kRelatedFragment)};
}

Iri originalPredicate(const Iri& contextual, const ContextualizeOptions& options) {
  if (options.predicates == PredicateMode::kKeepBase) return contextual;
  for (const auto& [original, related] : options.relatedProperties) {
    if (related == contextual) return original;
  }
  const std::string& s = contextual.str();
  if (s.ends_with(kRelatedFragment)) return Iri{s.substr(0, s.size() - kRelatedFragment.size())};
  if (s.ends_with(kRelatedSuffix)) {
    auto stripped = s.substr(0, s.size() - kRelatedSuffix.size());
    if (stripped.find('#') != std::string::npos) return Iri{stripped};
  }
  return contextual;
}

Iri combinedMemberPredicate(const ContextualizeOptions& options) {
  return rdf::vocab(options.combinedContextNamespace, "member");
}

// ---------------------------------------------------------------------------
// contextualize

namespace {

const Term& typeTerm() {
  static const Term t{rdf::vocabulary::rdfType()};
  return t;
}

class Contextualizer {
 public:
  Contextualizer(const DimensionRegistry& dims, const ContextualizeOptions& options)
      : dims_(dims), options_(options) {}

  Graph run(std::span<const AnnotatedStatement> statements) {
    for (const auto& s : statements) add(s);
    return std::move(out_);
  }

 private:
  void add(const AnnotatedStatement& st) {
    if (st.contexts.empty()) throw ContextualizeError("statement without contexts: " + describe(st));
    if (st.base.subject().isBlank() || st.base.object().isBlank()) {
      throw ContextualizeError("blank nodes are not supported in base statements: " + describe(st));
    }
    for (const auto& c : st.contexts) {
      dims_.get(c.dimension);
      out_.insertAll(c.description);
    }
    switch (options_.model.kind) {
      case CombinationModel::Kind::kMultiContextPart:
        addMultiContext(st);
        break;
      case CombinationModel::Kind::kContextsInContext:
        addNested(st);
        break;
      case CombinationModel::Kind::kCombinedExtent:
        if (st.contexts.size() == 1) {
          addMultiContext(st);
        } else {
          addCombined(st);
        }
        break;
    }
  }

  static std::string describe(const AnnotatedStatement& st) {
    std::ostringstream os;
    os << st;
    return os.str();
  }

  // Whether the object gets a part of its own.
  static bool slicesObject(const Triple& base) {
    return base.object().isIri() && base.predicate() != typeTerm();
  }

  void link(const Iri& subjectPart, const Triple& base, const Term& objectTerm) {
    out_.insert(Term{subjectPart}, Term{contextualPredicate(base.predicate().asIri(), options_)}, objectTerm);
  }

  void typeContexts(std::span<const ContextAssignment> contexts) {
    for (const auto& c : contexts) out_.insert(Term{c.context}, typeTerm(), Term{dims_.get(c.dimension).contextClass});
  }

  // One part per entity, one type/partOf/extent triple per dimension.
  void addMultiContext(const AnnotatedStatement& st) {
    typeContexts(st.contexts);
    auto part = [&](const Term& entity) {
      Iri p = mintPart(entity.asIri(), st.contexts, options_.minting, "multi");
      for (const auto& c : st.contexts) {
        const auto& d = dims_.get(c.dimension);
        out_.insert(Term{p}, typeTerm(), Term{d.partClass});
        out_.insert(Term{p}, Term{d.partOfProp}, entity);
        out_.insert(Term{p}, Term{d.extentProp}, Term{c.context});
      }
      return p;
    };
    Iri subjectPart = part(st.base.subject());
    link(subjectPart, st.base, slicesObject(st.base) ? Term{part(st.base.object())} : st.base.object());
  }

  // A chain of parts following the nesting order; the statement links the
  // innermost parts.
  void addNested(const AnnotatedStatement& st) {
    std::vector<ContextAssignment> ordered;
    for (const auto& name : options_.model.nesting) {
      auto it = std::find_if(st.contexts.begin(), st.contexts.end(),
                             [&](const ContextAssignment& c) { return c.dimension == name; });
      if (it != st.contexts.end()) ordered.push_back(*it);
    }
    if (ordered.size() != st.contexts.size()) {
      throw ContextualizeError("nesting order does not cover the dimensions of " + describe(st));
    }
    typeContexts(ordered);
    auto chain = [&](const Term& entity) {
      Term previous = entity;
      for (std::size_t level = 1; level <= ordered.size(); ++level) {
        std::span<const ContextAssignment> prefix(ordered.data(), level);
        const auto& c = ordered[level - 1];
        const auto& d = dims_.get(c.dimension);
        Term p{mintPart(entity.asIri(), prefix, options_.minting, "nested")};
        out_.insert(p, typeTerm(), Term{d.partClass});
        out_.insert(p, Term{d.partOfProp}, previous);
        out_.insert(p, Term{d.extentProp}, Term{c.context});
        previous = p;
      }
      return previous.asIri();
    };
    Iri subjectPart = chain(st.base.subject());
    link(subjectPart, st.base, slicesObject(st.base) ? Term{chain(st.base.object())} : st.base.object());
  }

  // One part per entity with a single extent to a combined Context.
  void addCombined(const AnnotatedStatement& st) {
    std::vector<std::string> names;
    for (const auto& c : st.contexts) names.push_back(c.dimension);
    for (std::size_t i = 0; i < st.contexts.size(); ++i) {
      for (std::size_t j = i + 1; j < st.contexts.size(); ++j) {
        if (st.contexts[i].context == st.contexts[j].context) {
          throw ContextualizeError("context " + st.contexts[i].context.str() +
                                   " is used in two dimensions; a combined extent cannot tell them apart");
        }
      }
    }
    ContextDimension combined = dims_.combined(names);
    Term cc{rdf::vocab(options_.combinedContextNamespace, "c" + stableDigest(contextKey(st.contexts)))};
    out_.insert(cc, typeTerm(), Term{combined.contextClass});
    Term member{combinedMemberPredicate(options_)};
    for (const auto& c : st.contexts) out_.insert(cc, member, Term{c.context});
    typeContexts(st.contexts);
    auto part = [&](const Term& entity) {
      Term p{mintPart(entity.asIri(), st.contexts, options_.minting, "combined")};
      out_.insert(p, typeTerm(), Term{combined.partClass});
      out_.insert(p, Term{combined.partOfProp}, entity);
      out_.insert(p, Term{combined.extentProp}, cc);
      return p.asIri();
    };
    Iri subjectPart = part(st.base.subject());
    link(subjectPart, st.base, slicesObject(st.base) ? Term{part(st.base.object())} : st.base.object());
  }

  const DimensionRegistry& dims_;
  const ContextualizeOptions& options_;
  Graph out_;
};

}  // namespace

Graph contextualize(std::span<const AnnotatedStatement> statements, const DimensionRegistry& dims,
                    const ContextualizeOptions& options) {
  return Contextualizer(dims, options).run(statements);
}

// ---------------------------------------------------------------------------
// decontextualize

PartIndex::PartIndex(const Graph& graph, const DimensionRegistry& dims, const ContextualizeOptions& options)
    : index_(graph), member_(combinedMemberPredicate(options)), corePartOf_(dims.core().contextualPartOf()) {
  const auto& registered = dims.dimensions();
  if (registered.size() > 12) {
    throw DecontextualizeError("too many registered dimensions to recognize their combinations");
  }
  for (const auto& d : registered) known_.push_back({d, {}});
  for (std::size_t mask = 1; mask < (std::size_t{1} << registered.size()); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<ContextDimension> members;
    for (std::size_t i = 0; i < registered.size(); ++i) {
      if (mask & (std::size_t{1} << i)) members.push_back(registered[i]);
    }
    known_.push_back({combineDimensions(members, dims.combinedNamespace()), members});
  }
  for (std::size_t i = 0; i < known_.size(); ++i) {
    partOf_.emplace(Term{known_[i].dim.partOfProp}, i);
    extent_.emplace(Term{known_[i].dim.extentProp}, i);
    partClasses_.insert(Term{known_[i].dim.partClass});
  }
  partClasses_.insert(Term{dims.core().contextualPart()});
}

bool PartIndex::isScaffolding(const Triple& t) const {
  const Term& p = t.predicate();
  if (p == corePartOf_ || partOf_.contains(p) || extent_.contains(p)) return true;
  return p == typeTerm() && partClasses_.contains(t.object());
}

bool PartIndex::isPart(const Term& t) const {
  if (!t.isIri()) return false;
  for (const Triple* tr : index_.bySubject(t)) {
    if (tr->predicate() == corePartOf_ || partOf_.contains(tr->predicate())) return true;
    if (tr->predicate() == typeTerm() && partClasses_.contains(tr->object())) return true;
  }
  return false;
}

const Term& PartIndex::partOfTarget(const Term& part) const {
  const Term* target = nullptr;
  for (const Triple* tr : index_.bySubject(part)) {
    if (tr->predicate() != corePartOf_ && !partOf_.contains(tr->predicate())) continue;
    if (target && *target != tr->object()) {
      throw DecontextualizeError("contextual part " + toNTriples(part) + " is contextualPartOf both " +
                                 toNTriples(*target) + " and " + toNTriples(tr->object()) +
                                 " (contextualPartOf is functional)");
    }
    target = &tr->object();
  }
  if (!target) throw DecontextualizeError("contextual part " + toNTriples(part) + " has no contextualPartOf");
  return *target;
}

std::map<std::string, Iri> PartIndex::directContexts(const Term& part) const {
  std::map<std::string, Iri> out;
  auto put = [&](const std::string& dim, const Term& ctx) {
    if (!ctx.isIri()) throw DecontextualizeError("extent of " + toNTriples(part) + " is not an IRI");
    auto [it, inserted] = out.emplace(dim, ctx.asIri());
    if (!inserted && it->second != ctx.asIri()) {
      throw DecontextualizeError("part " + toNTriples(part) + " has two contexts in dimension '" + dim + "'");
    }
  };
  for (const Triple* tr : index_.bySubject(part)) {
    auto it = extent_.find(tr->predicate());
    if (it == extent_.end()) continue;
    const Known& k = known_[it->second];
    if (k.members.empty()) {
      put(k.dim.name, tr->object());
      continue;
    }
    for (const Term& memberCtx : index_.objects(tr->object(), member_)) {
      const ContextDimension* owner = nullptr;
      for (const auto& m : k.members) {
        if (!index_.has(memberCtx, typeTerm(), Term{m.contextClass})) continue;
        if (owner) throw DecontextualizeError("member " + toNTriples(memberCtx) + " belongs to two dimensions");
        owner = &m;
      }
      if (!owner) {
        throw DecontextualizeError("member " + toNTriples(memberCtx) + " of " + toNTriples(tr->object()) +
                                   " is not typed with a member dimension's context class");
      }
      put(owner->name, memberCtx);
    }
  }
  if (out.empty()) throw DecontextualizeError("contextual part " + toNTriples(part) + " has no extent");
  return out;
}

std::vector<Term> PartIndex::extentTargets(const Term& part) const {
  std::vector<Term> out;
  for (const Triple* tr : index_.bySubject(part)) {
    auto it = extent_.find(tr->predicate());
    if (it == extent_.end()) continue;
    out.push_back(tr->object());
    if (!known_[it->second].members.empty()) {
      for (const Term& m : index_.objects(tr->object(), member_)) out.push_back(m);
    }
  }
  return out;
}

const PartIndex::Resolved& PartIndex::resolve(const Term& part) const {
  if (auto it = cache_.find(part); it != cache_.end()) return it->second;
  Resolved r{part, {}, {}};
  Term current = part;
  while (isPart(current)) {
    if (std::find(r.chain.begin(), r.chain.end(), current) != r.chain.end()) {
      throw DecontextualizeError("contextualPartOf cycle through " + toNTriples(current));
    }
    r.chain.push_back(current);
    for (auto& [dim, ctx] : directContexts(current)) {
      auto [it, inserted] = r.contexts.emplace(dim, ctx);
      if (!inserted && it->second != ctx) {
        throw DecontextualizeError("chain of " + toNTriples(part) + " has two contexts in dimension '" + dim + "'");
      }
    }
    current = partOfTarget(current);
  }
  r.entity = current;
  return cache_.emplace(part, std::move(r)).first->second;
}

std::vector<AnnotatedStatement> decontextualize(const Graph& graph, const DimensionRegistry& dims,
                                                const ContextualizeOptions& options,
                                                const std::optional<std::set<Iri>>& selection) {
  PartIndex parts(graph, dims, options);
  std::set<AnnotatedStatement> out;
  for (const auto& t : graph) {
    if (parts.isScaffolding(t) || !parts.isPart(t.subject())) continue;
    const auto& subject = parts.resolve(t.subject());
    Term object = parts.isPart(t.object()) ? parts.resolve(t.object()).entity : t.object();
    std::vector<ContextAssignment> contexts;
    bool selected = !selection;
    for (const auto& [dim, ctx] : subject.contexts) {
      selected = selected || selection->contains(ctx);
      contexts.push_back({dim, ctx, {}});
    }
    if (!selected) continue;
    Term predicate{originalPredicate(t.predicate().asIri(), options)};
    out.emplace(Triple{subject.entity, predicate, object}, std::move(contexts));
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Baselines

namespace {

std::string statementKey(const AnnotatedStatement& st) {
  return toNTriples(st.base.subject()) + toNTriples(st.base.predicate()) + toNTriples(st.base.object()) +
         contextKey(st.contexts);
}

}  // namespace

Graph encodeReification(std::span<const AnnotatedStatement> statements, const DimensionRegistry& dims,
                        const MintingPolicy& policy) {
  const Term statementClass{rdf::vocab(rdf::ns::kRdf, "Statement")};
  const Term subject{rdf::vocab(rdf::ns::kRdf, "subject")};
  const Term predicate{rdf::vocab(rdf::ns::kRdf, "predicate")};
  const Term object{rdf::vocab(rdf::ns::kRdf, "object")};
  Graph out;
  for (const auto& st : statements) {
    if (!st.base.subject().isIri()) throw ContextualizeError("reification needs an IRI subject");
    Term node = Term::iri(st.base.subject().value() + policy.separator + "stmt-" + stableDigest(statementKey(st)));
    out.insert(node, typeTerm(), statementClass);
    out.insert(node, subject, st.base.subject());
    out.insert(node, predicate, st.base.predicate());
    out.insert(node, object, st.base.object());
    for (const auto& c : st.contexts) {
      out.insert(node, Term{dims.get(c.dimension).extentProp}, Term{c.context});
      out.insertAll(c.description);
    }
  }
  return out;
}

Graph encodeSingleton(std::span<const AnnotatedStatement> statements, const DimensionRegistry& dims,
                      const MintingPolicy& policy) {
  const Term singletonOf{rdf::vocab(rdf::ns::kRdf, "singletonPropertyOf")};
  Graph out;
  for (const auto& st : statements) {
    Term property = Term::iri(st.base.predicate().value() + policy.separator + stableDigest(statementKey(st)));
    out.insert(st.base.subject(), property, st.base.object());
    out.insert(property, singletonOf, st.base.predicate());
    for (const auto& c : st.contexts) {
      out.insert(property, Term{dims.get(c.dimension).extentProp}, Term{c.context});
      out.insertAll(c.description);
    }
  }
  return out;
}

std::vector<SizeRow> sizeReport(std::span<const AnnotatedStatement> statements, const DimensionRegistry& dims) {
  std::vector<SizeRow> rows;
  ContextualizeOptions options;
  options.predicates = PredicateMode::kKeepBase;
  std::vector<std::string> nesting;
  for (const auto& d : dims.dimensions()) nesting.push_back(d.name);
  for (auto model : {CombinationModel::contextsInContext(nesting), CombinationModel::multiContextPart(),
                     CombinationModel::combinedExtent()}) {
    options.model = model;
    rows.push_back({"ndfluents", modelName(model.kind), contextualize(statements, dims, options).size()});
  }
  rows.push_back({"reification", "-", encodeReification(statements, dims).size()});
  rows.push_back({"singleton", "-", encodeSingleton(statements, dims).size()});
  return rows;
}

}  // namespace ndfluents
