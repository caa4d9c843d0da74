#include "ndfluents/annotated_io.hpp"

#include <map>

#include "ndfluents/csv.hpp"

namespace ndfluents {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

namespace {

std::vector<csv::Record> readCsv(std::string_view text) {
  try {
    return csv::read(text);
  } catch (const csv::CsvError& e) {
    throw AnnotatedFormatError(e.what());
  }
}

Iri toIri(const std::string& value, std::size_t line) {
  if (!rdf::isAbsoluteIri(value)) {
    throw AnnotatedFormatError("line " + std::to_string(line) + ": not an absolute IRI: '" + value + "'");
  }
  return Iri{value};
}

}  // namespace

AnnotatedDataset readBundledQuads(std::string_view nquads, std::string_view bundlesCsv) {
  std::map<Iri, std::vector<ContextAssignment>> bundles;
  auto records = readCsv(bundlesCsv);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (i == 0 && !rec.fields.empty() && rec.fields[0] == "bundle") continue;
    if (rec.fields.size() != 3) {
      throw AnnotatedFormatError("line " + std::to_string(rec.line) + ": expected bundle,dimension,context");
    }
    bundles[toIri(rec.fields[0], rec.line)].push_back({rec.fields[1], toIri(rec.fields[2], rec.line), {}});
  }

  AnnotatedDataset data;
  for (const Graph& g : rdf::parseQuads(nquads)) {
    if (!g.name()) {
      data.descriptions.insertAll(g);
      continue;
    }
    auto it = bundles.find(*g.name());
    if (it == bundles.end()) {
      throw AnnotatedFormatError("graph " + g.name()->str() + " is not listed in the bundle file");
    }
    for (const auto& t : g) {
      try {
        data.statements.emplace_back(t, it->second);
      } catch (const ContextualizeError& e) {
        throw AnnotatedFormatError("bundle " + g.name()->str() + ": " + e.what());
      }
    }
  }
  std::sort(data.statements.begin(), data.statements.end());
  return data;
}

BundledQuads writeBundledQuads(const AnnotatedDataset& data) {
  std::map<std::vector<ContextAssignment>, Graph> byBundle;
  for (const auto& st : data.statements) byBundle[st.contexts].insert(st.base);
  std::vector<Graph> graphs;
  Graph descriptions = data.descriptions;
  for (const auto& st : data.statements) {
    for (const auto& c : st.contexts) descriptions.insertAll(c.description);
  }
  if (!descriptions.empty()) graphs.push_back(descriptions);
  BundledQuads out;
  out.bundlesCsv = csv::writeRow({"bundle", "dimension", "context"});
  std::vector<std::vector<std::string>> rows;
  for (auto& [contexts, g] : byBundle) {
    std::string key;
    for (const auto& c : contexts) key += c.dimension + '\x1f' + c.context.str() + '\x1e';
    Iri name{"urn:ndfluents:bundle:" + stableDigest(key)};
    for (const auto& c : contexts) rows.push_back({name.str(), c.dimension, c.context.str()});
    g.setName(name);
    graphs.push_back(std::move(g));
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& r : rows) out.bundlesCsv += csv::writeRow(r);
  out.nquads = rdf::serializeQuads(graphs);
  return out;
}

AnnotatedDataset readStatementsCsv(std::string_view text) {
  AnnotatedDataset data;
  auto records = readCsv(text);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const auto& f = rec.fields;
    if (i == 0 && !f.empty() && f[0] == "subject") continue;
    auto fail = [&](const std::string& msg) -> AnnotatedFormatError {
      return AnnotatedFormatError("line " + std::to_string(rec.line) + ": " + msg);
    };
    if (f.size() < 6 || f.size() % 2 != 0) {
      throw fail("expected subject,predicate,object,objectType followed by dimension,context pairs");
    }
    Term object;
    const std::string& kind = f[3];
    if (kind == "iri") {
      object = Term{toIri(f[2], rec.line)};
    } else if (kind == "string") {
      object = Term::literal(f[2]);
    } else if (kind.starts_with("@") && kind.size() > 1) {
      object = Term::langLiteral(f[2], kind.substr(1));
    } else if (kind.starts_with("xsd:")) {
      object = Term::literal(f[2], rdf::vocab(rdf::ns::kXsd, kind.substr(4)));
    } else if (rdf::isAbsoluteIri(kind)) {
      object = Term::literal(f[2], Iri{kind});
    } else {
      throw fail("unknown objectType '" + kind + "'");
    }
    std::vector<ContextAssignment> contexts;
    for (std::size_t k = 4; k < f.size(); k += 2) contexts.push_back({f[k], toIri(f[k + 1], rec.line), {}});
    try {
      data.statements.emplace_back(Triple{Term{toIri(f[0], rec.line)}, Term{toIri(f[1], rec.line)}, object},
                                   std::move(contexts));
    } catch (const ContextualizeError& e) {
      throw fail(e.what());
    }
  }
  std::sort(data.statements.begin(), data.statements.end());
  return data;
}

std::string writeStatementsCsv(const std::vector<AnnotatedStatement>& statements) {
  std::string out = csv::writeRow({"subject", "predicate", "object", "objectType", "dim1", "ctx1"});
  for (const auto& st : statements) {
    const Term& o = st.base.object();
    std::string kind = o.isIri()                    ? "iri"
                       : !o.language().empty()      ? "@" + o.language()
                       : o.datatype() == rdf::xsd::string().str() ? "string"
                                                    : o.datatype();
    if (o.isBlank()) throw AnnotatedFormatError("blank nodes cannot be written as annotated statements");
    std::vector<std::string> row{st.base.subject().value(), st.base.predicate().value(), o.value(), kind};
    for (const auto& c : st.contexts) {
      row.push_back(c.dimension);
      row.push_back(c.context.str());
    }
    out += csv::writeRow(row);
  }
  return out;
}

}  // namespace ndfluents
