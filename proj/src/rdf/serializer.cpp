#include <algorithm>
#include <cctype>

#include "ndfluents/rdf/io.hpp"

namespace ndfluents::rdf {

const PrefixMap& standardPrefixes() {
  static const PrefixMap prefixes = {
      {"owl", std::string(ns::kOwl)},
      {"rdf", std::string(ns::kRdf)},
      {"rdfs", std::string(ns::kRdfs)},
      {"xsd", std::string(ns::kXsd)},
  };
  return prefixes;
}

namespace {

bool isSimpleLocalName(std::string_view local) {
  if (local.empty()) return false;
  auto ok = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  };
  if (!std::isalnum(static_cast<unsigned char>(local.front())) && local.front() != '_') return false;
  if (local.back() == '.') return false;
  return std::all_of(local.begin(), local.end(), [&](char c) { return ok(c) || c == '.'; });
}

class TurtleWriter {
 public:
  explicit TurtleWriter(const PrefixMap& prefixes) : prefixes_(prefixes) {}

  std::string term(const Term& t) const {
    if (t.isIri()) return iri(t.value());
    if (t.isLiteral() && t.language().empty() && t.datatype() != xsd::string().str()) {
      std::string lit = toNTriples(Term::literal(t.value()));
      return lit + "^^" + iri(t.datatype());
    }
    return toNTriples(t);
  }

  std::string iri(const std::string& value) const {
    // Longest matching namespace wins.
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& p : prefixes_) {
      if (value.starts_with(p.second) && (!best || p.second.size() > best->second.size()) &&
          isSimpleLocalName(std::string_view(value).substr(p.second.size()))) {
        best = &p;
      }
    }
    if (best) return best->first + ":" + value.substr(best->second.size());
    return "<" + value + ">";
  }

 private:
  const PrefixMap& prefixes_;
};

std::string writeTurtle(const Graph& graph, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& [prefix, ns] : prefixes) out += "@prefix " + prefix + ": <" + ns + "> .\n";
  TurtleWriter w(prefixes);
  const Term* subject = nullptr;
  const Term* predicate = nullptr;
  for (const auto& t : graph) {
    if (subject && *subject == t.subject()) {
      if (*predicate == t.predicate()) {
        out += " ,\n        " + w.term(t.object());
      } else {
        out += " ;\n    " + (t.predicate() == Term{vocabulary::rdfType()} ? std::string("a")
                                                                         : w.term(t.predicate())) +
               " " + w.term(t.object());
      }
    } else {
      if (subject) out += " .\n";
      out += "\n" + w.term(t.subject()) + "\n    " +
             (t.predicate() == Term{vocabulary::rdfType()} ? std::string("a") : w.term(t.predicate())) +
             " " + w.term(t.object());
    }
    subject = &t.subject();
    predicate = &t.predicate();
  }
  if (subject) out += " .\n";
  return out;
}

void appendLine(std::string& out, const Triple& t, const std::optional<Iri>& graph) {
  out += toNTriples(t.subject());
  out += ' ';
  out += toNTriples(t.predicate());
  out += ' ';
  out += toNTriples(t.object());
  if (graph) {
    out += " <";
    out += graph->str();
    out += '>';
  }
  out += " .\n";
}

}  // namespace

std::string serialize(const Graph& graph, Format format, const SerializeOptions& options) {
  Graph canonical = canonicalizeBlankNodes(graph);
  if (format == Format::kTurtle) return writeTurtle(canonical, options.prefixes);
  std::string out;
  std::optional<Iri> name = format == Format::kNQuads ? graph.name() : std::nullopt;
  for (const auto& t : canonical) appendLine(out, t, name);
  return out;
}

std::string serializeQuads(std::span<const Graph> graphs) {
  // Blank labels are document-scoped in N-Quads; canonicalize over the union
  // would merge nodes across graphs, so graphs are written as given after
  // sorting by name (default graph first).
  std::vector<const Graph*> order;
  for (const auto& g : graphs) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(),
                   [](const Graph* a, const Graph* b) { return a->name() < b->name(); });
  std::string out;
  for (const Graph* g : order) {
    for (const auto& t : *g) appendLine(out, t, g->name());
  }
  return out;
}

}  // namespace ndfluents::rdf
