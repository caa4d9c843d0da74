#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <set>
#include <sstream>

#include "ndfluents/annotated_io.hpp"
#include "ndfluents/config.hpp"
#include "ndfluents/contextualizer.hpp"
#include "ndfluents/ingest.hpp"
#include "ndfluents/query.hpp"
#include "ndfluents/rdf/io.hpp"
#include "ndfluents/reasoner.hpp"

namespace py = pybind11;
using namespace ndfluents;

namespace {

// `config` is INI text; every other keyword is a [general] key.
Config configFrom(const py::kwargs& kwargs) {
  Config config;
  if (kwargs.contains("config")) config = parseConfig(kwargs["config"].cast<std::string>());
  for (const auto& [key, value] : kwargs) {
    std::string k = key.cast<std::string>();
    if (k == "config") continue;
    std::string v;
    if (py::isinstance<py::bool_>(value)) {
      v = value.cast<bool>() ? "true" : "false";
    } else if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      for (const auto& item : value) v += (v.empty() ? "" : ",") + item.cast<std::string>();
    } else {
      v = py::str(value).cast<std::string>();
    }
    applyGeneralSetting(config, k, v);
  }
  config.validate();
  return config;
}

AnnotatedDataset readData(const std::string& data, const std::optional<std::string>& bundles) {
  return bundles ? readBundledQuads(data, *bundles) : readStatementsCsv(data);
}

rdf::Graph readGraph(const std::string& document, const std::string& format) {
  return rdf::parseGraph(document, rdf::formatFromName(format));
}

std::string writeGraph(const rdf::Graph& g, const std::string& format, const Config& config) {
  return rdf::serialize(g, rdf::formatFromName(format), {config.prefixes});
}

using TermTriple = std::tuple<std::string, std::string, std::string>;

}  // namespace

PYBIND11_MODULE(_ndfluents, m) {
  m.doc() = "Contextual parts for RDF statements: contextualize, decontextualize, validate and query.";

  py::register_exception<rdf::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContextualizeError>(m, "ContextualizeError", PyExc_ValueError);
  py::register_exception<DecontextualizeError>(m, "DecontextualizeError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<query::QueryError>(m, "QueryError", PyExc_ValueError);
  py::register_exception<ingest::IngestError>(m, "IngestError", PyExc_ValueError);
  py::register_exception<AnnotatedFormatError>(m, "AnnotatedFormatError", PyExc_ValueError);

  m.def(
      "parse",
      [](const std::string& document, const std::string& format) {
        std::vector<TermTriple> out;
        for (const auto& t : readGraph(document, format)) {
          out.emplace_back(rdf::toNTriples(t.subject()), rdf::toNTriples(t.predicate()), rdf::toNTriples(t.object()));
        }
        return out;
      },
      py::arg("document"), py::arg("format") = "nt",
      "Triples of a document as N-Triples term strings, sorted.");

  m.def(
      "serialize",
      [](const std::vector<TermTriple>& triples, const std::string& format) {
        std::string nt;
        for (const auto& [s, p, o] : triples) nt += s + " " + p + " " + o + " .\n";
        return rdf::serialize(rdf::parseGraph(nt, rdf::Format::kNTriples), rdf::formatFromName(format));
      },
      py::arg("triples"), py::arg("format") = "nt");

  m.def(
      "ingest",
      [](const std::string& csvText, const std::optional<std::string>& base) {
        ingest::IngestOptions options;
        if (base) options.base = *base;
        auto result = ingest::ingestCsv(csvText, options);
        auto written = writeBundledQuads({result.statements, result.descriptions});
        return py::make_tuple(written.nquads, written.bundlesCsv);
      },
      py::arg("csv_text"), py::arg("base") = py::none(),
      "Population estimates CSV to (N-Quads, bundle CSV).");

  m.def(
      "contextualize",
      [](const std::string& data, const std::optional<std::string>& bundles, const std::string& format,
         const py::kwargs& kwargs) {
        Config config = configFrom(kwargs);
        auto dataset = readData(data, bundles);
        rdf::Graph g = contextualize(dataset.statements, config.dims, config.contextualize);
        g.insertAll(dataset.descriptions);
        return writeGraph(g, format, config);
      },
      py::arg("data"), py::arg("bundles") = py::none(), py::arg("format") = "nt",
      "Statements CSV (or N-Quads with a bundle CSV) to a contextualized graph.");

  m.def(
      "decontextualize",
      [](const std::string& document, const std::string& format, const std::optional<std::vector<std::string>>& select,
         const py::kwargs& kwargs) {
        Config config = configFrom(kwargs);
        std::optional<std::set<Iri>> selection;
        if (select) {
          selection.emplace();
          for (const auto& s : *select) selection->insert(Iri{s});
        }
        return writeStatementsCsv(decontextualize(readGraph(document, format), config.dims, config.contextualize,
                                                  selection));
      },
      py::arg("document"), py::arg("format") = "nt", py::arg("select") = py::none(),
      "Contextualized graph back to a statements CSV.");

  m.def(
      "validate",
      [](const std::string& document, const std::string& format, const py::kwargs& kwargs) {
        Config config = configFrom(kwargs);
        ValidateOptions options{config.sameExtent, config.contextualize};
        auto axioms = allAxioms(config);
        py::list out;
        for (const auto& v : validate(readGraph(document, format), axioms, config.dims, options)) {
          std::vector<std::string> resources;
          for (const auto& r : v.resources) resources.push_back(rdf::toNTriples(r));
          out.append(py::dict(py::arg("kind") = violationKindName(v.kind), py::arg("resources") = resources,
                              py::arg("detail") = v.detail));
        }
        return out;
      },
      py::arg("document"), py::arg("format") = "nt",
      "Violations against the TBox generated from the settings.");

  m.def(
      "reason",
      [](const std::string& document, const std::string& format, const py::kwargs& kwargs) {
        Config config = configFrom(kwargs);
        auto axioms = allAxioms(config);
        auto result = saturate(readGraph(document, format), axioms, config.dims.core());
        return writeGraph(result.derived, format, config);
      },
      py::arg("document"), py::arg("format") = "nt", "Triples derived from the graph and the generated TBox.");

  m.def(
      "query",
      [](const std::string& document, const std::string& pattern, const std::string& format,
         const py::kwargs& kwargs) {
        Config config = configFrom(kwargs);
        auto table = query::match(readGraph(document, format), query::parsePattern(pattern, config.prefixes),
                                  config.dims, config.contextualize);
        return py::make_tuple(table.columns, table.rows);
      },
      py::arg("document"), py::arg("pattern"), py::arg("format") = "nt",
      "Runs a pattern; returns (columns, rows) of strings.");

  m.def(
      "size_report",
      [](const std::string& data, const std::optional<std::string>& bundles, const py::kwargs& kwargs) {
        Config config = configFrom(kwargs);
        std::vector<std::tuple<std::string, std::string, std::size_t>> out;
        for (const auto& r : sizeReport(readData(data, bundles).statements, config.dims)) {
          out.emplace_back(r.pattern, r.model, r.triples);
        }
        return out;
      },
      py::arg("data"), py::arg("bundles") = py::none());

  m.def(
      "gen_ontology",
      [](const std::string& format, const py::kwargs& kwargs) {
        Config config = configFrom(kwargs);
        std::map<std::string, std::string> out;
        for (const auto& [stem, axioms] : ontologyModules(config)) {
          out[stem] = writeGraph(axiomsToGraph(axioms), format, config);
        }
        return out;
      },
      py::arg("format") = "ttl", "TBox modules by file stem.");
}
