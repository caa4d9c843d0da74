#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ndfluents/rdf/graph.hpp"

namespace ndfluents::rdf {

enum class Format { kNTriples, kNQuads, kTurtle };

// Maps "nt"/"ntriples", "nq"/"nquads", "ttl"/"turtle" (and file extensions
// of the same names) to a format. Throws std::invalid_argument otherwise.
Format formatFromName(std::string_view name);
Format formatFromPath(std::string_view path);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A relative IRI reference was found and no base IRI is in scope.
class IriResolutionError : public ParseError {
 public:
  using ParseError::ParseError;
};

struct ParseOptions {
  // Base IRI for resolving relative references (Turtle only; N-Triples and
  // N-Quads require absolute IRIs).
  std::string base;
};

// Parses a whole document into one graph. For N-Quads every quad lands in the
// returned graph regardless of its graph label.
//
// Blank nodes are relabeled `b0, b1, ...` in first-occurrence order.
Graph parseGraph(std::string_view document, Format format, const ParseOptions& options = {});

// Parses N-Quads into one graph per label. The default graph, if it has any
// triples, comes first and is unnamed; named graphs follow in label order.
std::vector<Graph> parseQuads(std::string_view document);

using PrefixMap = std::vector<std::pair<std::string, std::string>>;

// rdf, rdfs, owl, xsd.
const PrefixMap& standardPrefixes();

struct SerializeOptions {
  // Only used for Turtle; emitted as `@prefix` lines in the given order.
  PrefixMap prefixes = standardPrefixes();
};

// Deterministic: triples in (subject, predicate, object) order, LF line
// endings, blank nodes canonically relabeled. For N-Quads the graph name is
// written on every line.
std::string serialize(const Graph& graph, Format format, const SerializeOptions& options = {});

std::string serializeQuads(std::span<const Graph> graphs);

// Resolves `reference` against `base` following RFC 3986.
std::string resolveIri(std::string_view base, std::string_view reference);

}  // namespace ndfluents::rdf
