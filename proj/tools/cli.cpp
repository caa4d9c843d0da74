#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ndfluents/annotated_io.hpp"
#include "ndfluents/config.hpp"
#include "ndfluents/contextualizer.hpp"
#include "ndfluents/ingest.hpp"
#include "ndfluents/query.hpp"
#include "ndfluents/rdf/io.hpp"
#include "ndfluents/reasoner.hpp"

namespace ndfluents::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeOutput(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << content;
  if (!file) throw UsageError("error writing '" + path + "'");
}

bool endsWith(const std::string& s, std::string_view suffix) { return s.ends_with(suffix); }

rdf::Graph readGraph(const std::string& path) {
  std::string text = readFile(path);
  rdf::Format format;
  try {
    format = rdf::formatFromPath(path);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (format != rdf::Format::kNQuads) return rdf::parseGraph(text, format);
  rdf::Graph merged;
  for (const auto& g : rdf::parseQuads(text)) merged.insertAll(g);
  return merged;
}

std::string writeGraph(const rdf::Graph& graph, const std::string& path, const std::string& formatName,
                       const Config& config) {
  rdf::Format format = rdf::Format::kNTriples;
  if (!formatName.empty()) {
    format = rdf::formatFromName(formatName);
  } else if (!path.empty() && path != "-") {
    format = rdf::formatFromPath(path);
  }
  return rdf::serialize(graph, format, {config.prefixes});
}

// Annotated statements from a direct CSV or from N-Quads plus bundles.
AnnotatedDataset readAnnotated(const std::string& path, const std::string& bundles) {
  if (endsWith(path, ".csv")) return readStatementsCsv(readFile(path));
  if (endsWith(path, ".nq")) {
    if (bundles.empty()) throw UsageError("N-Quads input '" + path + "' needs --bundles");
    return readBundledQuads(readFile(path), readFile(bundles));
  }
  throw UsageError("annotated statements must be a .csv file or a .nq file with --bundles: '" + path + "'");
}

void writeAnnotated(const AnnotatedDataset& data, const std::string& path, const std::string& bundles,
                    std::ostream& out) {
  if (endsWith(path, ".nq")) {
    if (bundles.empty()) throw UsageError("N-Quads output '" + path + "' needs --bundles");
    auto written = writeBundledQuads(data);
    writeOutput(path, written.nquads, out);
    writeOutput(bundles, written.bundlesCsv, out);
    return;
  }
  if (!path.empty() && path != "-" && !endsWith(path, ".csv")) {
    throw UsageError("annotated statements are written as .csv or .nq: '" + path + "'");
  }
  writeOutput(path, writeStatementsCsv(data.statements), out);
}

std::vector<Axiom> readTbox(const std::vector<std::string>& paths, const Config& config) {
  if (paths.empty()) return allAxioms(config);
  std::vector<Axiom> out;
  for (const auto& p : paths) {
    for (auto& a : axiomsFromGraph(readGraph(p))) out.push_back(std::move(a));
  }
  return out;
}

Iri expandIri(const Config& config, const std::string& raw) {
  auto colon = raw.find(':');
  if (colon != std::string::npos && raw.compare(colon, 3, "://") != 0) {
    for (const auto& [p, ns] : config.prefixes) {
      if (p == raw.substr(0, colon)) return Iri{ns + raw.substr(colon + 1)};
    }
  }
  if (!rdf::isAbsoluteIri(raw)) throw UsageError("not an absolute IRI or known prefixed name: '" + raw + "'");
  return Iri{raw};
}

// Settings shared by every subcommand; flags win over the config file.
struct Settings {
  std::string configPath;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", configPath, "INI configuration file")->check(CLI::ExistingFile);
    const std::pair<const char*, const char*> keys[] = {
        {"--model", "model"},
        {"--nesting", "nesting"},
        {"--minting", "minting"},
        {"--separator", "separator"},
        {"--predicate-mode", "predicate_mode"},
        {"--datatype-axioms", "datatype_axioms"},
        {"--restriction-axioms", "restriction_axioms"},
        {"--same-extent", "same_extent"},
        {"--namespace", "namespace"},
    };
    for (const auto& [flag, key] : keys) {
      std::string k = key;
      cmd->add_option_function<std::string>(
          flag, [this, k](const std::string& v) { overrides[k] = v; }, "overrides general." + k);
    }
  }

  Config load() const {
    Config config = configPath.empty() ? Config{} : loadConfig(configPath);
    if (auto it = overrides.find("namespace"); it != overrides.end()) applyGeneralSetting(config, it->first, it->second);
    for (const auto& [k, v] : overrides) {
      if (k != "namespace") applyGeneralSetting(config, k, v);
    }
    config.validate();
    return config;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rewrites annotated RDF statements into NdFluents contextual parts and back, generates the "
               "ontology modules, validates and queries the result.",
               "ndfluents"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ndfluents 1.0.0");

  std::function<int()> action;
  std::vector<std::unique_ptr<Settings>> settingsStore;
  auto settingsFor = [&](CLI::App* cmd) -> Settings& {
    settingsStore.push_back(std::make_unique<Settings>());
    settingsStore.back()->attach(cmd);
    return *settingsStore.back();
  };

  // gen-ontology
  auto* gen = app.add_subcommand("gen-ontology", "Write the TBox modules selected by the configuration");
  auto& genSettings = settingsFor(gen);
  std::string outDir, genFormat = "ttl";
  gen->add_option("-o,--out-dir", outDir, "Directory for the module files")->required();
  gen->add_option("--format", genFormat, "ttl or nt")->check(CLI::IsMember({"ttl", "nt"}));
  gen->callback([&] {
    action = [&] {
      Config config = genSettings.load();
      fs::create_directories(outDir);
      for (const auto& [stem, axioms] : ontologyModules(config)) {
        fs::path file = fs::path(outDir) / (stem + "." + genFormat);
        writeOutput(file.string(), rdf::serialize(axiomsToGraph(axioms), rdf::formatFromName(genFormat), {config.prefixes}),
                    out);
        err << "wrote " << axioms.size() << " axioms to " << file.string() << '\n';
      }
      return kOk;
    };
  });

  // ingest-csv
  auto* ingestCmd = app.add_subcommand("ingest-csv", "Turn population estimates into annotated statements");
  std::string ingestInput, ingestOut, ingestBundles, ingestBase;
  ingestCmd->add_option("input", ingestInput, "CSV with source,year,population_low,population_high")
      ->required()
      ->check(CLI::ExistingFile);
  ingestCmd->add_option("-o,--output", ingestOut, "Annotated statements (.csv, or .nq with --bundles)")->required();
  ingestCmd->add_option("--bundles", ingestBundles, "Bundle sidecar CSV for .nq output");
  ingestCmd->add_option("--base", ingestBase, "Namespace for minted intervals and sources");
  ingestCmd->callback([&] {
    action = [&] {
      ingest::IngestOptions options;
      if (!ingestBase.empty()) options.base = ingestBase;
      auto result = ingest::ingestCsv(readFile(ingestInput), options);
      AnnotatedDataset data{result.statements, result.descriptions};
      if (endsWith(ingestOut, ".csv") && !data.descriptions.empty()) {
        err << "note: the direct CSV format drops " << data.descriptions.size()
            << " context description triples; use .nq with --bundles to keep them\n";
      }
      writeAnnotated(data, ingestOut, ingestBundles, out);
      err << "ingested " << result.rows.size() << " rows\n";
      return kOk;
    };
  });

  // contextualize
  auto* ctxCmd = app.add_subcommand("contextualize", "Rewrite annotated statements into contextual parts");
  auto& ctxSettings = settingsFor(ctxCmd);
  std::string ctxInput, ctxBundles, ctxOutput = "-", ctxFormat;
  ctxCmd->add_option("-i,--input", ctxInput, "Annotated statements (.csv, or .nq with --bundles)")
      ->required()
      ->check(CLI::ExistingFile);
  ctxCmd->add_option("--bundles", ctxBundles, "Bundle sidecar CSV for .nq input")->check(CLI::ExistingFile);
  ctxCmd->add_option("-o,--output", ctxOutput, "Output graph file, '-' for standard output");
  ctxCmd->add_option("--format", ctxFormat, "nt, nq or ttl (default: from the output extension)");
  ctxCmd->callback([&] {
    action = [&] {
      Config config = ctxSettings.load();
      auto data = readAnnotated(ctxInput, ctxBundles);
      rdf::Graph graph = contextualize(data.statements, config.dims, config.contextualize);
      graph.insertAll(data.descriptions);
      writeOutput(ctxOutput, writeGraph(graph, ctxOutput, ctxFormat, config), out);
      err << "contextualized " << data.statements.size() << " statements into " << graph.size() << " triples ("
          << modelName(config.contextualize.model.kind) << ")\n";
      return kOk;
    };
  });

  // decontextualize
  auto* deCmd = app.add_subcommand("decontextualize", "Recover annotated statements from contextual parts");
  auto& deSettings = settingsFor(deCmd);
  std::string deInput, deOutput = "-", deBundles;
  std::vector<std::string> deSelect;
  deCmd->add_option("-i,--input", deInput, "Contextualized graph")->required()->check(CLI::ExistingFile);
  deCmd->add_option("-o,--output", deOutput, "Annotated statements (.csv, or .nq with --bundles)");
  deCmd->add_option("--bundles", deBundles, "Bundle sidecar CSV for .nq output");
  deCmd->add_option("--select", deSelect, "Keep statements in these contexts (repeatable)");
  deCmd->callback([&] {
    action = [&] {
      Config config = deSettings.load();
      std::optional<std::set<Iri>> selection;
      if (!deSelect.empty()) {
        selection.emplace();
        for (const auto& s : deSelect) selection->insert(expandIri(config, s));
      }
      auto statements = decontextualize(readGraph(deInput), config.dims, config.contextualize, selection);
      writeAnnotated({statements, {}}, deOutput, deBundles, out);
      err << "recovered " << statements.size() << " statements\n";
      return kOk;
    };
  });

  // validate
  auto* valCmd = app.add_subcommand("validate", "Check a contextualized graph against the pattern's invariants");
  auto& valSettings = settingsFor(valCmd);
  std::string valInput, valReport;
  std::vector<std::string> valTbox;
  valCmd->add_option("-i,--input", valInput, "Graph to validate")->required()->check(CLI::ExistingFile);
  valCmd->add_option("--tbox", valTbox, "TBox files (default: the modules generated from the configuration)")
      ->check(CLI::ExistingFile);
  valCmd->add_option("--report", valReport, "Also write a JSON report here");
  valCmd->callback([&] {
    action = [&] {
      Config config = valSettings.load();
      rdf::Graph graph = readGraph(valInput);
      auto axioms = readTbox(valTbox, config);
      ValidateOptions options{config.sameExtent, config.contextualize};
      auto violations = validate(graph, axioms, config.dims, options);
      out << formatViolations(violations);
      if (!valReport.empty()) writeOutput(valReport, violationsToJson(violations), out);
      err << violations.size() << " violation(s) in " << graph.size() << " triples\n";
      return violations.empty() ? kOk : kViolations;
    };
  });

  // reason
  auto* reasonCmd = app.add_subcommand("reason", "Saturate a graph and print the derived triples");
  auto& reasonSettings = settingsFor(reasonCmd);
  std::string reasonInput, reasonOutput = "-", reasonFormat;
  std::vector<std::string> reasonTbox;
  reasonCmd->add_option("-i,--input", reasonInput, "Graph to saturate")->required()->check(CLI::ExistingFile);
  reasonCmd->add_option("--tbox", reasonTbox, "TBox files (default: the modules generated from the configuration)")
      ->check(CLI::ExistingFile);
  reasonCmd->add_option("-o,--output", reasonOutput, "Derived triples, '-' for standard output");
  reasonCmd->add_option("--format", reasonFormat, "nt, nq or ttl");
  reasonCmd->callback([&] {
    action = [&] {
      Config config = reasonSettings.load();
      rdf::Graph graph = readGraph(reasonInput);
      auto result = saturate(graph, readTbox(reasonTbox, config), config.dims.core());
      writeOutput(reasonOutput, writeGraph(result.derived, reasonOutput, reasonFormat, config), out);
      for (const auto& [a, b] : result.sameAsPairs()) err << "sameAs " << toNTriples(a) << ' ' << toNTriples(b) << '\n';
      err << formatViolations(result.violations);
      err << "derived " << result.derived.size() << " triples, " << result.violations.size() << " violation(s)\n";
      return kOk;
    };
  });

  // query
  auto* queryCmd = app.add_subcommand("query", "Run a pattern file against a graph and print CSV");
  auto& querySettings = settingsFor(queryCmd);
  std::string queryInput, queryPattern, queryOutput = "-";
  queryCmd->add_option("-i,--input", queryInput, "Graph to query")->required()->check(CLI::ExistingFile);
  queryCmd->add_option("-p,--pattern", queryPattern, "Pattern file")->required()->check(CLI::ExistingFile);
  queryCmd->add_option("-o,--output", queryOutput, "CSV output, '-' for standard output");
  queryCmd->callback([&] {
    action = [&] {
      Config config = querySettings.load();
      auto pattern = query::parsePattern(readFile(queryPattern), config.prefixes);
      auto table = query::match(readGraph(queryInput), pattern, config.dims, config.contextualize);
      writeOutput(queryOutput, table.toCsv(), out);
      return kOk;
    };
  });

  // stats
  auto* statsCmd = app.add_subcommand("stats", "Triple counts under every model and both baselines");
  auto& statsSettings = settingsFor(statsCmd);
  std::string statsInput, statsBundles;
  statsCmd->add_option("-i,--input", statsInput, "Annotated statements (.csv, or .nq with --bundles)")
      ->required()
      ->check(CLI::ExistingFile);
  statsCmd->add_option("--bundles", statsBundles, "Bundle sidecar CSV for .nq input")->check(CLI::ExistingFile);
  statsCmd->callback([&] {
    action = [&] {
      Config config = statsSettings.load();
      auto data = readAnnotated(statsInput, statsBundles);
      out << "pattern,model,triples\n";
      for (const auto& row : sizeReport(data.statements, config.dims)) {
        out << row.pattern << ',' << row.model << ',' << row.triples << '\n';
      }
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }
  try {
    return action ? action() : kUsageError;
  } catch (const rdf::ParseError& e) {
    err << "error: parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsageError;
}

}  // namespace ndfluents::cli
