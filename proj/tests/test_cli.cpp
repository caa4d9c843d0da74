#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "ndfluents/annotated_io.hpp"
#include "ndfluents/config.hpp"
#include "ndfluents/rdf/io.hpp"

namespace ndfluents {
namespace {

namespace fs = std::filesystem;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ndfluents");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ndfluents-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char* kParisCsv =
    "subject,predicate,object,objectType,dim1,ctx1\n"
    "http://example.org/Paris,http://example.org/capitalOf,http://example.org/France,iri,temporal,"
    "http://example.org/year508\n";

TEST(Config, DefaultsFollowRecommendations) {
  Config c;
  EXPECT_EQ(c.contextualize.model.kind, CombinationModel::Kind::kMultiContextPart);
  EXPECT_TRUE(c.datatypeAxioms);
  EXPECT_TRUE(c.restrictionAxioms);
  EXPECT_EQ(c.dims.dimensions().size(), 2u);
}

TEST(Config, ParseSections) {
  Config c = parseConfig(R"(
[general]
model = contexts-in-context
nesting = provenance, temporal
minting = hash
separator = /
predicate_mode = keep-base

[prefixes]
ex = http://example.org/

[dimension:temporal]
preset = temporal

[dimension:provenance]
preset = provenance

[dimension:trust]
namespace = http://example.org/trust#

[property:capitalOf]
iri = ex:capitalOf
domain = ex:City
)");
  EXPECT_EQ(c.contextualize.model.nesting, (std::vector<std::string>{"provenance", "temporal"}));
  EXPECT_EQ(c.contextualize.minting.mode, MintingPolicy::Mode::kHash);
  EXPECT_EQ(c.contextualize.minting.separator, "/");
  EXPECT_EQ(c.contextualize.predicates, PredicateMode::kKeepBase);
  ASSERT_EQ(c.dims.dimensions().size(), 3u);
  EXPECT_EQ(c.dims.get("trust").partClass.str(), "http://example.org/trust#TrustPart");
  ASSERT_EQ(c.properties.size(), 1u);
  EXPECT_EQ(c.properties.front().domain, testing::ex("City"));
}

TEST(Config, Errors) {
  EXPECT_THROW(parseConfig("[general]\nmodel = quads\n"), std::exception);
  EXPECT_THROW(parseConfig("[general]\nmodel = contexts-in-context\n").validate(), ConfigError);
  EXPECT_THROW(parseConfig("[general]\ncolour = blue\n"), ConfigError);
  EXPECT_THROW(parseConfig("[dimension:x]\npart_class = http://e/P\n"), ConfigError);
  Config c;
  EXPECT_THROW(applyGeneralSetting(c, "datatype_axioms", "perhaps"), ConfigError);
}

bool hasAxiom(const std::vector<Axiom>& axioms, const Axiom& a) {
  return std::find(axioms.begin(), axioms.end(), a) != axioms.end();
}

TEST(Config, ModulesFollowModel) {
  Config b;
  auto stems = [](const Config& c) {
    std::vector<std::string> out;
    for (const auto& [stem, axioms] : ontologyModules(c)) out.push_back(stem);
    return out;
  };
  EXPECT_EQ(stems(b), (std::vector<std::string>{"core", "datatype", "dimension-temporal", "dimension-provenance",
                                                "restrictions-temporal", "restrictions-provenance"}));
  EXPECT_FALSE(hasAxiom(allAxioms(b), transitivityAxiom()));

  Config a;
  applyGeneralSetting(a, "model", "contexts-in-context");
  applyGeneralSetting(a, "nesting", "temporal,provenance");
  EXPECT_TRUE(hasAxiom(allAxioms(a), transitivityAxiom()));
  EXPECT_FALSE(hasAxiom(allAxioms(a), functionalExtentAxiom()));

  Config c;
  applyGeneralSetting(c, "model", "combined-extent");
  applyGeneralSetting(c, "datatype_axioms", "false");
  applyGeneralSetting(c, "restriction_axioms", "false");
  auto s = stems(c);
  EXPECT_EQ(s, (std::vector<std::string>{"core", "dimension-temporal", "dimension-provenance", "functional-extent",
                                         "combined-provenance-temporal"}));
  EXPECT_TRUE(hasAxiom(allAxioms(c), functionalExtentAxiom()));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).status, cli::kUsageError);
  EXPECT_EQ(cli({"frobnicate"}).status, cli::kUsageError);
  EXPECT_EQ(cli({"contextualize", "--bogus"}).status, cli::kUsageError);
  EXPECT_EQ(cli({"contextualize", "-i", path("missing.csv")}).status, cli::kUsageError);
  EXPECT_EQ(cli({"--help"}).status, cli::kOk);
  spit(path("bad.nt"), "<http://a/s> <http://a/p> .\n");
  auto r = cli({"validate", "-i", path("bad.nt")});
  EXPECT_EQ(r.status, cli::kUsageError);
  EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
}

TEST_F(CliTest, GenOntologyModelA) {
  auto r = cli({"gen-ontology", "-o", path("tbox"), "--model", "contexts-in-context", "--nesting",
                "temporal,provenance", "--format", "nt"});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  std::string transitive = slurp(path("tbox/transitive.nt"));
  EXPECT_NE(transitive.find("<http://purl.org/NET/ndfluents#contextualPartOf> "
                            "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
                            "<http://www.w3.org/2002/07/owl#TransitiveProperty>"),
            std::string::npos);
}

TEST_F(CliTest, GenOntologyModelC) {
  auto r = cli({"gen-ontology", "-o", path("tbox"), "--model", "combined-extent"});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  rdf::Graph g = rdf::parseGraph(slurp(path("tbox/functional-extent.ttl")), rdf::Format::kTurtle);
  auto axioms = axiomsFromGraph(g);
  EXPECT_TRUE(hasAxiom(axioms, functionalExtentAxiom()));
  EXPECT_TRUE(fs::exists(path("tbox/combined-provenance-temporal.ttl")));
}

TEST_F(CliTest, ContextualizeValidateDecontextualize) {
  spit(path("in.csv"), kParisCsv);
  auto r = cli({"contextualize", "-i", path("in.csv"), "-o", path("out.nt"), "--predicate-mode", "keep-base"});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  EXPECT_EQ(rdf::parseGraph(slurp(path("out.nt")), rdf::Format::kNTriples).size(), 8u);

  r = cli({"validate", "-i", path("out.nt"), "--same-extent", "true", "--report", path("report.json")});
  EXPECT_EQ(r.status, cli::kOk) << r.out << r.err;
  EXPECT_NE(slurp(path("report.json")).find("\"count\": 0"), std::string::npos);

  r = cli({"decontextualize", "-i", path("out.nt"), "-o", path("back.csv"), "--predicate-mode", "keep-base"});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  EXPECT_EQ(readStatementsCsv(slurp(path("back.csv"))).statements, readStatementsCsv(kParisCsv).statements);
}

TEST_F(CliTest, ValidateReportsViolations) {
  spit(path("bad.nt"),
       "<http://e/x> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> "
       "<http://purl.org/NET/ndfluents/4dFluents#TemporalPart> .\n");
  auto r = cli({"validate", "-i", path("bad.nt")});
  EXPECT_EQ(r.status, cli::kViolations);
  EXPECT_NE(r.out.find("MissingPartOf"), std::string::npos) << r.out;
}

TEST_F(CliTest, ReasonWritesDerivedTriples) {
  spit(path("in.csv"), kParisCsv);
  ASSERT_EQ(cli({"contextualize", "-i", path("in.csv"), "-o", path("out.nt")}).status, cli::kOk);
  auto r = cli({"reason", "-i", path("out.nt"), "-o", "-", "--format", "nt"});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("<http://example.org/Paris@year508> <http://purl.org/NET/ndfluents#contextualPartOf> "
                       "<http://example.org/Paris>"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, PopulationPipeline) {
  auto r = cli({"ingest-csv", NDFLUENTS_TEST_DATA "/population.csv", "-o", path("pop.nq"), "--bundles",
                path("pop-bundles.csv")});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  r = cli({"contextualize", "-i", path("pop.nq"), "--bundles", path("pop-bundles.csv"), "-o", path("pop.ttl"),
           "--predicate-mode", "keep-base"});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  spit(path("q.txt"), R"(PREFIX time: <http://www.w3.org/2006/time#>
PREFIX dbo: <http://dbpedia.org/ontology/>
AGG AVG ?population AS average
AGG COUNT ?part AS studies
GROUP ?year
?part fd:temporalExtent ?interval .
?interval time:year ?year .
?part dbo:populationTotal ?population .
)");
  r = cli({"query", "-i", path("pop.ttl"), "-p", path("q.txt"), "--predicate-mode", "keep-base"});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  EXPECT_EQ(r.out,
            "year,average,studies\n"
            "-1000,50000000.00,1\n"
            "0,256200000.00,5\n"
            "1000,272400000.20,5\n"
            "1500,450750000.00,4\n"
            "1800,943333333.33,3\n");

  r = cli({"stats", "-i", path("pop.nq"), "--bundles", path("pop-bundles.csv")});
  ASSERT_EQ(r.status, cli::kOk) << r.err;
  EXPECT_EQ(r.out.rfind("pattern,model,triples\n", 0), 0u);
  EXPECT_NE(r.out.find("reification,-,"), std::string::npos);

  r = cli({"validate", "-i", path("pop.ttl"), "--predicate-mode", "keep-base", "--same-extent", "true"});
  EXPECT_EQ(r.status, cli::kOk) << r.out << r.err;
}

TEST_F(CliTest, Deterministic) {
  spit(path("in.csv"), kParisCsv);
  ASSERT_EQ(cli({"contextualize", "-i", path("in.csv"), "-o", path("a.ttl"), "--minting", "hash"}).status, cli::kOk);
  ASSERT_EQ(cli({"contextualize", "-i", path("in.csv"), "-o", path("b.ttl"), "--minting", "hash"}).status, cli::kOk);
  EXPECT_EQ(slurp(path("a.ttl")), slurp(path("b.ttl")));
}

}  // namespace
}  // namespace ndfluents
