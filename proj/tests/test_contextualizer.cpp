#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "ndfluents/contextualizer.hpp"

namespace ndfluents {
namespace {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;
using testing::ex;
using testing::exTerm;
using testing::keepBase;
using testing::parisCapital;
using testing::provenance;
using testing::temporal;

const DimensionRegistry& standardDims() {
  static const DimensionRegistry dims = DimensionRegistry::standard();
  return dims;
}

Graph run(std::vector<AnnotatedStatement> st, const ContextualizeOptions& options) {
  return contextualize(st, standardDims(), options);
}

TEST(Registry, RejectsDuplicates) {
  auto dims = DimensionRegistry::standard();
  EXPECT_THROW(dims.add(temporalDimension()), VocabularyError);
  auto clash = makeDimension("other", "http://x.org/o#");
  clash.partClass = temporalDimension().partClass;
  EXPECT_THROW(dims.add(clash), VocabularyError);
  EXPECT_THROW(dims.get("trust"), ContextualizeError);
  EXPECT_EQ(dims.find("trust"), nullptr);
}

TEST(Statement, SortsAndRejectsRepeatedDimension) {
  AnnotatedStatement s(testing::triple("a", "p", "b"), {temporal("t1"), provenance("p1")});
  EXPECT_EQ(s.contexts.front().dimension, "provenance");
  EXPECT_THROW(AnnotatedStatement(testing::triple("a", "p", "b"), {temporal("t1"), temporal("t2")}),
               ContextualizeError);
}

TEST(Mint, SuffixAndDeterminism) {
  std::vector<ContextAssignment> c{temporal("year508")};
  MintingPolicy suffix;
  EXPECT_EQ(mintPart(ex("Paris"), c, suffix), Iri{"http://example.org/Paris@year508"});
  EXPECT_EQ(mintPart(ex("Paris"), c, suffix), mintPart(ex("Paris"), c, suffix));
  MintingPolicy hash{MintingPolicy::Mode::kHash, "/"};
  EXPECT_EQ(mintPart(ex("Paris"), c, hash), mintPart(ex("Paris"), c, hash));
  EXPECT_EQ(mintPart(ex("Paris"), c, hash).str().rfind("http://example.org/Paris/h", 0), 0u);
}

TEST(Mint, DistinctContextSetsGiveDistinctIris) {
  // Every non-empty subset of three contexts over two dimensions.
  std::vector<std::vector<ContextAssignment>> sets = {
      {temporal("t1")}, {temporal("t2")}, {provenance("p1")}, {provenance("p1"), temporal("t1")},
      {provenance("p1"), temporal("t2")}};
  for (auto mode : {MintingPolicy::Mode::kSuffix, MintingPolicy::Mode::kHash}) {
    std::set<Iri> seen;
    for (const auto& s : sets) seen.insert(mintPart(ex("Paris"), s, {mode, "@"}));
    EXPECT_EQ(seen.size(), sets.size());
  }
  EXPECT_THROW(mintPart(ex("Paris"), {}, {}), ContextualizeError);
}

TEST(Predicates, RelatedNaming) {
  ContextualizeOptions o;
  EXPECT_EQ(contextualPredicate(ex("capitalOf"), o), Iri{"http://example.org/capitalOf#contextual"});
  Iri hashed{"http://x.org/v#capitalOf"};
  EXPECT_EQ(contextualPredicate(hashed, o), Iri{"http://x.org/v#capitalOf_contextual"});
  EXPECT_EQ(originalPredicate(contextualPredicate(hashed, o), o), hashed);
  EXPECT_EQ(contextualPredicate(rdf::vocabulary::rdfType(), o), rdf::vocabulary::rdfType());
  o.relatedProperties[ex("capitalOf")] = ex("contextualCapitalOf");
  EXPECT_EQ(contextualPredicate(ex("capitalOf"), o), ex("contextualCapitalOf"));
  EXPECT_EQ(originalPredicate(ex("contextualCapitalOf"), o), ex("capitalOf"));
  EXPECT_EQ(contextualPredicate(ex("capitalOf"), keepBase()), ex("capitalOf"));
}

TEST(Contextualize, DatatypeStatementHasFiveTriples) {
  AnnotatedStatement s(Triple{exTerm("Paris"), exTerm("population"), Term::integer(8000)}, {temporal("t1")});
  Graph g = run({s}, keepBase());
  EXPECT_EQ(g.size(), 5u);
  Term part = Term::iri("http://example.org/Paris@t1");
  auto t = temporalDimension();
  EXPECT_TRUE(g.contains({part, exTerm("population"), Term::integer(8000)}));
  EXPECT_TRUE(g.contains({part, Term{t.partOfProp}, exTerm("Paris")}));
  EXPECT_TRUE(g.contains({exTerm("t1"), testing::typeTerm(), Term{t.contextClass}}));
}

TEST(Contextualize, TwoDimensionsMultiContextPart) {
  Graph g = run({parisCapital({temporal("t1"), provenance("p1")})}, keepBase());
  EXPECT_EQ(g.size(), 15u);
  Term paris = Term::iri("http://example.org/Paris@p1@t1");
  EXPECT_TRUE(g.contains({paris, exTerm("capitalOf"), Term::iri("http://example.org/France@p1@t1")}));
  EXPECT_TRUE(g.contains({paris, Term{provenanceDimension().extentProp}, exTerm("p1")}));
}

TEST(Contextualize, CombinedExtent) {
  auto o = keepBase(CombinationModel::combinedExtent());
  Graph g = run({parisCapital({temporal("t1"), provenance("p1")})}, o);
  // 8 core triples, 2 member links, 2 member typings.
  EXPECT_EQ(g.size(), 12u);
  Term member{combinedMemberPredicate(o)};
  EXPECT_EQ(g.match(std::nullopt, member, std::nullopt).size(), 2u);
  // Every part has exactly one extent.
  std::vector<ContextDimension> pair{temporalDimension(), provenanceDimension()};
  Term extent{combineDimensions(pair).extentProp};
  for (const auto& t : g.match(std::nullopt, testing::typeTerm(), Term{combineDimensions(pair).partClass})) {
    EXPECT_EQ(g.match(t.subject(), extent, std::nullopt).size(), 1u);
  }
  EXPECT_THROW(run({parisCapital({temporal("x"), provenance("x")})}, o), ContextualizeError);
}

TEST(Contextualize, CombinedWithOneDimensionFallsBack) {
  Graph c = run({parisCapital({temporal("t1")})}, keepBase(CombinationModel::combinedExtent()));
  Graph b = run({parisCapital({temporal("t1")})}, keepBase());
  EXPECT_EQ(c.size(), 8u);
  EXPECT_TRUE(testing::isomorphic(c, b, [](const Term& t) { return t.isIri() && t.value().find('@') != std::string::npos; }));
}

TEST(Contextualize, NestedChain) {
  auto o = keepBase(CombinationModel::contextsInContext({"temporal", "provenance"}));
  Graph g = run({parisCapital({temporal("t1"), provenance("p1")})}, o);
  EXPECT_EQ(g.size(), 15u);
  Term outer = Term::iri("http://example.org/Paris@t1");
  Term inner = Term::iri("http://example.org/Paris@t1@p1");
  EXPECT_TRUE(g.contains({outer, Term{temporalDimension().partOfProp}, exTerm("Paris")}));
  EXPECT_TRUE(g.contains({inner, Term{provenanceDimension().partOfProp}, outer}));
  EXPECT_TRUE(g.contains({inner, exTerm("capitalOf"), Term::iri("http://example.org/France@t1@p1")}));

  auto missing = keepBase(CombinationModel::contextsInContext({"temporal"}));
  EXPECT_THROW(run({parisCapital({temporal("t1"), provenance("p1")})}, missing), ContextualizeError);
}

TEST(Contextualize, TypeStatementKeepsClass) {
  AnnotatedStatement s(Triple{exTerm("Paris"), testing::typeTerm(), exTerm("City")}, {temporal("t1")});
  Graph g = run({s}, ContextualizeOptions{});
  EXPECT_EQ(g.size(), 5u);
  EXPECT_TRUE(g.contains({Term::iri("http://example.org/Paris@t1"), testing::typeTerm(), exTerm("City")}));
}

TEST(Contextualize, RejectsUnknownDimensionAndBlankNodes) {
  EXPECT_THROW(run({parisCapital({{"trust", ex("high"), {}}})}, {}), ContextualizeError);
  AnnotatedStatement blank(Triple{Term::blank("b0"), exTerm("p"), exTerm("o")}, {temporal("t1")});
  EXPECT_THROW(run({blank}, {}), ContextualizeError);
}

TEST(Contextualize, DescriptionsAreCopied) {
  ContextAssignment c = temporal("t1");
  c.description.insert(exTerm("t1"), exTerm("year"), Term::integer(508));
  Graph g = run({parisCapital({c})}, keepBase());
  EXPECT_EQ(g.size(), 9u);
  EXPECT_TRUE(g.contains({exTerm("t1"), exTerm("year"), Term::integer(508)}));
}

TEST(Decontextualize, TwoDimensionFixture) {
  auto st = parisCapital({temporal("t1"), provenance("p1")});
  for (const auto& o : {keepBase(), ContextualizeOptions{}}) {
    auto back = decontextualize(run({st}, o), standardDims(), o);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back.front(), st);
  }
}

TEST(Decontextualize, NestedSelection) {
  auto o = keepBase(CombinationModel::contextsInContext({"temporal", "provenance"}));
  auto a = parisCapital({temporal("t1"), provenance("p1")});
  auto b = parisCapital({temporal("t2"), provenance("p2")});
  Graph g = run({a, b}, o);
  auto selected = decontextualize(g, standardDims(), o, std::set<Iri>{ex("p1")});
  ASSERT_EQ(selected.size(), 1u);
  EXPECT_EQ(selected.front(), a);
  EXPECT_TRUE(decontextualize(g, standardDims(), o, std::set<Iri>{ex("nothing")}).empty());
  EXPECT_EQ(decontextualize(g, standardDims(), o).size(), 2u);
}

TEST(Decontextualize, TwoPartOfTargetsIsAnError) {
  Graph g = run({parisCapital({temporal("t1")})}, keepBase());
  g.insert(Term::iri("http://example.org/Paris@t1"), Term{temporalDimension().partOfProp}, exTerm("Lutetia"));
  EXPECT_THROW(decontextualize(g, standardDims(), keepBase()), DecontextualizeError);
}

TEST(Baselines, ReificationAndSingletonCounts) {
  std::vector<AnnotatedStatement> st{parisCapital({temporal("t1"), provenance("p1")})};
  EXPECT_EQ(encodeReification(st, standardDims()).size(), 6u);
  EXPECT_EQ(encodeSingleton(st, standardDims()).size(), 4u);
  EXPECT_TRUE(encodeReification({}, standardDims()).empty());
  EXPECT_TRUE(encodeSingleton({}, standardDims()).empty());
}

std::size_t rowCount(const std::vector<SizeRow>& rows, const std::string& pattern, const std::string& model) {
  for (const auto& r : rows) {
    if (r.pattern == pattern && r.model == model) return r.triples;
  }
  ADD_FAILURE() << "no row " << pattern << "/" << model;
  return 0;
}

TEST(SizeReport, FormulaValues) {
  std::vector<AnnotatedStatement> one{parisCapital({temporal("t1")})};
  auto rows = sizeReport(one, standardDims());
  EXPECT_EQ(rowCount(rows, "ndfluents", "multi-context-part"), 8u);
  EXPECT_EQ(rowCount(rows, "reification", "-"), 5u);
  EXPECT_EQ(rowCount(rows, "singleton", "-"), 3u);

  std::vector<AnnotatedStatement> two{parisCapital({temporal("t1"), provenance("p1")})};
  rows = sizeReport(two, standardDims());
  EXPECT_EQ(rowCount(rows, "ndfluents", "multi-context-part"), 15u);
  EXPECT_EQ(rowCount(rows, "ndfluents", "contexts-in-context"), 15u);
  EXPECT_EQ(rowCount(rows, "reification", "-"), 6u);
  EXPECT_EQ(rowCount(rows, "singleton", "-"), 4u);

  two.push_back(two.front());
  EXPECT_EQ(sizeReport(two, standardDims()), rows);
}

// Smaller sibling of the acceptance round-trip run, also covering hash
// minting and related predicates.
TEST(RoundTrip, RandomCorporaAllModelsAndPolicies) {
  std::mt19937_64 rng(2024);
  auto dims = testing::threeDimensions();
  for (int trial = 0; trial < 150; ++trial) {
    auto corpus = testing::randomCorpus(rng);
    auto expected = testing::sortedUnique(corpus.statements);
    for (auto model : {CombinationModel::contextsInContext(corpus.nesting), CombinationModel::multiContextPart(),
                       CombinationModel::combinedExtent()}) {
      for (auto mode : {MintingPolicy::Mode::kSuffix, MintingPolicy::Mode::kHash}) {
        ContextualizeOptions o;
        o.model = model;
        o.minting.mode = mode;
        o.predicates = trial % 2 ? PredicateMode::kKeepBase : PredicateMode::kRelated;
        Graph g = contextualize(corpus.statements, dims, o);
        EXPECT_EQ(decontextualize(g, dims, o), expected) << "trial " << trial << " " << modelName(model.kind);
      }
    }
  }
}

TEST(ModelNames, RoundTrip) {
  for (auto k : {CombinationModel::Kind::kContextsInContext, CombinationModel::Kind::kMultiContextPart,
                 CombinationModel::Kind::kCombinedExtent}) {
    EXPECT_EQ(modelFromName(modelName(k)), k);
  }
  EXPECT_THROW(modelFromName("quads"), std::invalid_argument);
}

}  // namespace
}  // namespace ndfluents
