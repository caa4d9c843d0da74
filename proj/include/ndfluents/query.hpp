#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ndfluents/contextualizer.hpp"
#include "ndfluents/rdf/graph.hpp"
#include "ndfluents/rdf/io.hpp"

namespace ndfluents::query {

class QueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Variable {
  std::string name;  // without the leading '?'
  auto operator<=>(const Variable&) const = default;
};

using Slot = std::variant<rdf::Term, Variable>;

struct TriplePattern {
  Slot subject;
  Slot predicate;
  Slot object;
};

enum class AggregateFn { kAvg, kCount, kMin, kMax, kSum };

std::string aggregateName(AggregateFn fn);

struct Aggregate {
  AggregateFn fn;
  std::string variable;
  std::string name;  // output column
  bool distinct = false;
};

// Keeps only solutions whose bound contextual parts have `context` in
// `dimension`.
struct ContextFilter {
  std::string dimension;
  Iri context;
};

struct Pattern {
  std::vector<TriplePattern> triples;
  // Projected variables when there is no aggregate; all variables if empty.
  std::vector<std::string> select;
  std::optional<std::string> group;
  std::vector<Aggregate> aggregates;
  std::optional<ContextFilter> context;
  // Decimal places of AVG (and of SUM/MIN/MAX over non-integers).
  int scale = 2;

  std::vector<std::string> variables() const;
  // Throws QueryError on unknown variables or a negative scale.
  void validate() const;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  // RFC 4180 quoting, LF line endings, header first.
  std::string toCsv() const;
  bool operator==(const ResultTable&) const = default;
};

using Binding = std::map<std::string, rdf::Term>;

// Distinct solution mappings of the conjunctive pattern, sorted.
std::vector<Binding> solutions(const rdf::Graph& graph, const Pattern& pattern,
                               const DimensionRegistry& dims = DimensionRegistry::standard(),
                               const ContextualizeOptions& options = {});

// Solutions grouped and aggregated. Without aggregates, one row per
// solution projected on `select`. Grouped rows are ordered by group key,
// numerically when every key is a number.
ResultTable match(const rdf::Graph& graph, const Pattern& pattern,
                  const DimensionRegistry& dims = DimensionRegistry::standard(),
                  const ContextualizeOptions& options = {});

// Statements whose subject part has `context` directly, through its
// contextualPartOf chain, or through a combined context, plus the part
// typing, partOf, extent and context typing triples they rely on.
rdf::Graph contextSlice(const rdf::Graph& graph, const DimensionRegistry& dims, const Iri& context,
                        const ContextualizeOptions& options = {});

// Line-oriented pattern format:
//
//   PREFIX ex: <http://example.org/>
//   SELECT ?a ?b
//   AGG AVG ?population AS average
//   AGG COUNT DISTINCT ?part AS studies
//   GROUP ?year
//   CONTEXT provenance ex:McEvedy
//   SCALE 2
//   ?part ex:population ?population .
//
// Pattern lines hold three terms (`?var`, `<iri>`, `pfx:local`, `a`,
// literals, numbers) and an optional final '.'. `#` starts a comment.
Pattern parsePattern(std::string_view text, const rdf::PrefixMap& prefixes = rdf::standardPrefixes());

}  // namespace ndfluents::query
