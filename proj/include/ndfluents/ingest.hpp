#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndfluents/contextualizer.hpp"

namespace ndfluents::ingest {

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::string_view kTimeNamespace = "http://www.w3.org/2006/time#";
inline constexpr std::string_view kProvNamespace = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view kDbpediaResource = "http://dbpedia.org/resource/";
inline constexpr std::string_view kDbpediaOntology = "http://dbpedia.org/ontology/";

struct EstimateRow {
  std::size_t line;
  std::string source;
  long long year;  // astronomical numbering, 0 allowed
  long long populationLow;
  std::optional<long long> populationHigh;

  // The low value, or the mean of low and high rounded half up.
  long long value() const;
};

struct IngestOptions {
  // Namespace for minted intervals, calendar years, sources and agents.
  std::string base = "http://example.org/population/";
  Iri entity{std::string(kDbpediaResource) + "Earth"};
  Iri property{std::string(kDbpediaOntology) + "populationTotal"};
};

struct IngestResult {
  std::vector<EstimateRow> rows;
  std::vector<AnnotatedStatement> statements;
  DimensionRegistry dims;
  // Union of all interval and source descriptions.
  rdf::Graph descriptions;
};

// Header `source,year,population_low,population_high`; population_high may
// be empty. Throws IngestError on malformed rows, non-numeric or
// non-positive populations, high < low, and repeated (source, year) pairs.
std::vector<EstimateRow> parseEstimates(std::string_view csvText);

// One `entity property value` statement per row with a temporal context
// (one Interval per year) and a provenance context (one Activity per
// source). Intervals carry `time:year` directly and through
// `time:intervalDuring / time:hasDateTimeDescription / time:year`.
IngestResult ingestCsv(std::string_view csvText, const IngestOptions& options = {});

Iri intervalIri(long long year, const IngestOptions& options = {});
Iri sourceIri(const std::string& source, const IngestOptions& options = {});

}  // namespace ndfluents::ingest
