#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "ndfluents/contextualizer.hpp"
#include "ndfluents/rdf/io.hpp"

namespace ndfluents {
namespace {

using rdf::Format;
using rdf::Graph;
using rdf::Term;
using rdf::Triple;
using testing::ex;
using testing::exTerm;

constexpr std::string_view kFd = "http://purl.org/NET/ndfluents/4dFluents#";

Term fd(std::string_view local) { return Term{rdf::vocab(kFd, local)}; }

TEST(Term, OrderingPutsIrisBeforeBlanksBeforeLiterals) {
  Term iri = exTerm("z");
  Term blank = Term::blank("b0");
  Term lit = Term::literal("a");
  EXPECT_LT(iri, blank);
  EXPECT_LT(blank, lit);
  EXPECT_LT(Term::blank("b2"), Term::blank("b10"));
}

TEST(Term, RejectsRelativeIri) {
  EXPECT_THROW(Iri{"Paris"}, std::invalid_argument);
  EXPECT_THROW(Iri{"http://ex.org/a b"}, std::invalid_argument);
}

TEST(Term, LiteralRendering) {
  EXPECT_EQ(rdf::toNTriples(Term::literal("a\"b\n")), "\"a\\\"b\\n\"");
  EXPECT_EQ(rdf::toNTriples(Term::langLiteral("Paris", "fr")), "\"Paris\"@fr");
  EXPECT_EQ(rdf::toNTriples(Term::integer(-3)), "\"-3\"^^<http://www.w3.org/2001/XMLSchema#integer>");
}

TEST(Term, LocalName) {
  EXPECT_EQ(ex("Paris").localName(), "Paris");
  EXPECT_EQ(Iri{"http://x.org/a#b"}.localName(), "b");
  EXPECT_EQ(Iri{"urn:isbn:123"}.localName(), "123");
}

TEST(Triple, RejectsLiteralSubjectAndNonIriPredicate) {
  EXPECT_THROW(Triple(Term::literal("x"), exTerm("p"), exTerm("o")), std::invalid_argument);
  EXPECT_THROW(Triple(exTerm("s"), Term::blank("b0"), exTerm("o")), std::invalid_argument);
}

TEST(Parse, SingleNTriplesLine) {
  Graph g = rdf::parseGraph("<http://ex.org/Paris> <http://ex.org/capitalOf> <http://ex.org/France> .\n",
                            Format::kNTriples);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.begin()->object(), Term::iri("http://ex.org/France"));
}

TEST(Parse, ArityErrorReportsLine) {
  try {
    rdf::parseGraph("<http://a/s> <http://a/p> <http://a/o> .\n<http://a/a> <http://a/b> .\n", Format::kNTriples);
    FAIL() << "expected a parse error";
  } catch (const rdf::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, RelativeIriWithoutBase) {
  EXPECT_THROW(rdf::parseGraph("<a> <http://a/p> <http://a/o> .", Format::kTurtle), rdf::IriResolutionError);
  Graph g = rdf::parseGraph("<a> <http://a/p> <http://a/o> .", Format::kTurtle, {"http://base.org/x/"});
  EXPECT_EQ(g.begin()->subject(), Term::iri("http://base.org/x/a"));
}

TEST(Parse, TurtleAbbreviations) {
  const char* doc = R"(@prefix ex: <http://example.org/> .
PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>
ex:Paris a ex:City ;
  ex:name "Paris"@fr, "Paris" ;
  ex:population 2165423 ;
  ex:area 105.4 ;
  ex:capital true ;
  ex:mayor [ ex:name "A" ] .
)";
  Graph g = rdf::parseGraph(doc, Format::kTurtle);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_TRUE(g.contains({exTerm("Paris"), testing::typeTerm(), exTerm("City")}));
  EXPECT_TRUE(g.contains({exTerm("Paris"), exTerm("population"), Term::integer(2165423)}));
  EXPECT_TRUE(g.contains({exTerm("Paris"), exTerm("area"), Term::literal("105.4", rdf::xsd::decimal())}));
  EXPECT_TRUE(g.contains({exTerm("Paris"), exTerm("mayor"), Term::blank("b0")}));
}

TEST(Parse, UndeclaredPrefix) { EXPECT_THROW(rdf::parseGraph("ex:a ex:b ex:c .", Format::kTurtle), rdf::ParseError); }

TEST(Parse, QuadsSplitByLabel) {
  const char* doc =
      "<http://a/s> <http://a/p> <http://a/o> <http://a/g2> .\n"
      "<http://a/s> <http://a/p> <http://a/o> .\n"
      "<http://a/s> <http://a/p> \"x\" <http://a/g1> .\n";
  auto graphs = rdf::parseQuads(doc);
  ASSERT_EQ(graphs.size(), 3u);
  EXPECT_FALSE(graphs[0].name());
  EXPECT_EQ(graphs[1].name(), Iri{"http://a/g1"});
  EXPECT_EQ(graphs[2].name(), Iri{"http://a/g2"});
  EXPECT_EQ(rdf::parseGraph(doc, Format::kNQuads).size(), 2u);
}

// The nine assertions of the Paris/France fluent example.
const char* kParisFluent = R"(@prefix fd: <http://purl.org/NET/ndfluents/4dFluents#> .
@prefix ex: <http://example.org/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
ex:capitalOf rdfs:subPropertyOf fd:fluentProperty .
<http://example.org/Paris@508> a fd:TemporalPart .
<http://example.org/France@508> a fd:TemporalPart .
ex:year508 a fd:Interval .
<http://example.org/Paris@508> ex:capitalOf <http://example.org/France@508> .
<http://example.org/Paris@508> fd:temporalExtent ex:year508 .
<http://example.org/France@508> fd:temporalExtent ex:year508 .
<http://example.org/Paris@508> fd:temporalPartOf ex:Paris .
<http://example.org/France@508> fd:temporalPartOf ex:France .
)";

TEST(Parse, FluentExampleCardinality) {
  Graph g = rdf::parseGraph(kParisFluent, Format::kTurtle);
  EXPECT_EQ(g.size(), 9u);
  EXPECT_TRUE(g.contains({Term::iri("http://example.org/Paris@508"), fd("temporalPartOf"), exTerm("Paris")}));
}

TEST(Serialize, EmptyAndSingle) {
  EXPECT_EQ(rdf::serialize(Graph{}, Format::kNTriples), "");
  std::string ttl = rdf::serialize(Graph{}, Format::kTurtle);
  EXPECT_NE(ttl.find("@prefix rdf:"), std::string::npos);
  Graph one{testing::triple("a", "b", "c")};
  EXPECT_EQ(rdf::serialize(one, Format::kNTriples),
            "<http://example.org/a> <http://example.org/b> <http://example.org/c> .\n");
}

TEST(Serialize, TwoContextFixtureRoundTripsBitIdentically) {
  auto dims = DimensionRegistry::standard();
  std::vector<AnnotatedStatement> st{
      testing::parisCapital({testing::temporal("t1"), testing::provenance("p1")})};
  Graph g = contextualize(st, dims, testing::keepBase());
  ASSERT_EQ(g.size(), 15u);
  rdf::SerializeOptions opts;
  opts.prefixes.emplace_back("ex", std::string(testing::kEx));
  opts.prefixes.emplace_back("fd", std::string(kFd));
  for (Format f : {Format::kNTriples, Format::kTurtle, Format::kNQuads}) {
    std::string doc = rdf::serialize(g, f, opts);
    Graph back = rdf::parseGraph(doc, f);
    EXPECT_EQ(back, g);
    EXPECT_EQ(rdf::serialize(back, f, opts), doc);
  }
}

Term randomTerm(std::mt19937_64& rng, bool allowLiteral) {
  std::uniform_int_distribution<int> kind(0, allowLiteral ? 5 : 2);
  std::uniform_int_distribution<int> small(0, 3);
  switch (kind(rng)) {
    case 0:
    case 1: return exTerm("n" + std::to_string(small(rng)));
    case 2: return Term::blank("x" + std::to_string(small(rng)));
    case 3: return Term::literal("v \"" + std::to_string(small(rng)) + "\"\n\t\\");
    case 4: return Term::langLiteral("l" + std::to_string(small(rng)), "en-GB");
    default: return Term::literal(std::to_string(small(rng) - 1), rdf::xsd::integer());
  }
}

Graph randomGraph(std::mt19937_64& rng) {
  Graph g;
  int n = std::uniform_int_distribution<int>(0, 12)(rng);
  for (int i = 0; i < n; ++i) {
    g.insert(randomTerm(rng, false), exTerm("p" + std::to_string(i % 3)), randomTerm(rng, true));
  }
  return g;
}

TEST(Serialize, RoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Graph g = randomGraph(rng);
    for (Format f : {Format::kNTriples, Format::kTurtle, Format::kNQuads}) {
      Graph back = rdf::parseGraph(rdf::serialize(g, f), f);
      EXPECT_EQ(back, rdf::canonicalizeBlankNodes(g)) << "trial " << trial;
      EXPECT_TRUE(testing::isomorphic(back, g, testing::isBlank)) << "trial " << trial;
    }
  }
}

TEST(Graph, CanonicalizationIgnoresLabels) {
  Graph a{{Term::blank("q"), exTerm("p"), exTerm("o")}, {exTerm("s"), exTerm("p"), Term::blank("r")}};
  Graph b{{Term::blank("zz"), exTerm("p"), exTerm("o")}, {exTerm("s"), exTerm("p"), Term::blank("aa")}};
  EXPECT_EQ(rdf::canonicalizeBlankNodes(a), rdf::canonicalizeBlankNodes(b));
}

TEST(Graph, UnionLaws) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Graph a = randomGraph(rng), b = randomGraph(rng), c = randomGraph(rng);
    EXPECT_EQ(rdf::graphUnion(a, b), rdf::graphUnion(b, a));
    EXPECT_EQ(rdf::graphUnion(rdf::graphUnion(a, b), c), rdf::graphUnion(a, rdf::graphUnion(b, c)));
    EXPECT_EQ(rdf::graphUnion(a, a), a);
    EXPECT_EQ(rdf::graphUnion(a, Graph{}), a);
  }
}

TEST(Graph, MatchAndIndex) {
  Graph g{testing::triple("a", "p", "b"), testing::triple("a", "p", "c"), testing::triple("b", "q", "c")};
  EXPECT_EQ(g.match(exTerm("a"), std::nullopt, std::nullopt).size(), 2u);
  EXPECT_EQ(g.match(std::nullopt, std::nullopt, exTerm("c")).size(), 2u);
  rdf::TripleIndex idx(g);
  EXPECT_EQ(idx.objects(exTerm("a"), exTerm("p")).size(), 2u);
  EXPECT_EQ(idx.subjects(exTerm("q"), exTerm("c")), std::vector<Term>{exTerm("b")});
  EXPECT_TRUE(idx.has(exTerm("b"), exTerm("q"), exTerm("c")));
  EXPECT_TRUE(idx.bySubject(exTerm("zzz")).empty());
}

TEST(Format, Names) {
  EXPECT_EQ(rdf::formatFromName("ttl"), Format::kTurtle);
  EXPECT_EQ(rdf::formatFromPath("out/x.nq"), Format::kNQuads);
  EXPECT_THROW(rdf::formatFromName("rdfxml"), std::invalid_argument);
}

TEST(ResolveIri, Rfc3986Examples) {
  const std::string base = "http://a/b/c/d;p?q";
  EXPECT_EQ(rdf::resolveIri(base, "g"), "http://a/b/c/g");
  EXPECT_EQ(rdf::resolveIri(base, "../g"), "http://a/b/g");
  EXPECT_EQ(rdf::resolveIri(base, "/g"), "http://a/g");
  EXPECT_EQ(rdf::resolveIri(base, "#s"), "http://a/b/c/d;p?q#s");
  EXPECT_EQ(rdf::resolveIri(base, "../../../g"), "http://a/g");
}

}  // namespace
}  // namespace ndfluents
