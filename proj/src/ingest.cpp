#include "ndfluents/ingest.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "ndfluents/csv.hpp"

namespace ndfluents::ingest {

using rdf::Graph;
using rdf::Term;

long long EstimateRow::value() const {
  if (!populationHigh) return populationLow;
  // Both positive, so integer division of (low + high + 1) rounds half up.
  return (populationLow + *populationHigh + 1) / 2;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

long long integerField(const std::string& raw, const char* column, std::size_t line) {
  std::string s = trim(raw);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IngestError(std::string(column) + " is not an integer: '" + raw + "'", line);
  }
  return v;
}

std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) {
    bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out += keep ? c : '_';
  }
  return out;
}

Iri timeTerm(std::string_view local) { return rdf::vocab(kTimeNamespace, local); }
Iri provTerm(std::string_view local) { return rdf::vocab(kProvNamespace, local); }

}  // namespace

Iri intervalIri(long long year, const IngestOptions& options) {
  return Iri{options.base + "interval/year" + std::to_string(year)};
}

Iri sourceIri(const std::string& source, const IngestOptions& options) {
  return Iri{options.base + "source/" + slug(source)};
}

std::vector<EstimateRow> parseEstimates(std::string_view csvText) {
  std::vector<csv::Record> records;
  try {
    records = csv::read(csvText);
  } catch (const csv::CsvError& e) {
    throw IngestError(e.what(), e.line());
  }
  const std::vector<std::string> header{"source", "year", "population_low", "population_high"};
  if (records.empty()) throw IngestError("missing header", 1);
  std::vector<std::string> got;
  for (const auto& f : records.front().fields) got.push_back(trim(f));
  if (got != header) {
    throw IngestError("expected header 'source,year,population_low,population_high'", records.front().line);
  }
  std::vector<EstimateRow> rows;
  std::set<std::pair<std::string, long long>> seen;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.fields.size() != 4) {
      throw IngestError("expected 4 fields, got " + std::to_string(rec.fields.size()), rec.line);
    }
    EstimateRow row{rec.line, trim(rec.fields[0]), 0, 0, std::nullopt};
    if (row.source.empty()) throw IngestError("empty source", rec.line);
    row.year = integerField(rec.fields[1], "year", rec.line);
    row.populationLow = integerField(rec.fields[2], "population_low", rec.line);
    if (!trim(rec.fields[3]).empty()) row.populationHigh = integerField(rec.fields[3], "population_high", rec.line);
    if (row.populationLow <= 0) throw IngestError("population must be positive", rec.line);
    if (row.populationHigh && *row.populationHigh < row.populationLow) {
      throw IngestError("population_high is below population_low", rec.line);
    }
    if (!seen.emplace(row.source, row.year).second) {
      throw IngestError("duplicate estimate for source '" + row.source + "' and year " + std::to_string(row.year),
                        rec.line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

IngestResult ingestCsv(std::string_view csvText, const IngestOptions& options) {
  IngestResult result{parseEstimates(csvText), {}, DimensionRegistry::standard(), {}};
  const Term type{rdf::vocabulary::rdfType()};
  const Term label{rdf::vocab(rdf::ns::kRdfs, "label")};
  const Term year{timeTerm("year")};

  std::map<long long, Graph> intervals;
  std::map<std::string, Graph> sources;
  std::map<std::string, std::string> slugOwner;
  for (const auto& row : result.rows) {
    if (!intervals.contains(row.year)) {
      Term interval{intervalIri(row.year, options)};
      Term yearValue = Term::integer(row.year);
      Term calendar = Term::iri(options.base + "calendar-year/" + std::to_string(row.year));
      Term description = Term::iri(options.base + "calendar-year/" + std::to_string(row.year) + "/description");
      Graph g;
      g.insert(interval, type, Term{timeTerm("Interval")});
      g.insert(interval, year, yearValue);
      g.insert(interval, Term{timeTerm("intervalDuring")}, calendar);
      g.insert(calendar, Term{timeTerm("hasDateTimeDescription")}, description);
      g.insert(description, year, yearValue);
      intervals.emplace(row.year, std::move(g));
    }
    if (!sources.contains(row.source)) {
      auto [it, fresh] = slugOwner.emplace(slug(row.source), row.source);
      if (!fresh) {
        throw IngestError("sources '" + it->second + "' and '" + row.source + "' map to the same IRI", row.line);
      }
      Term activity{sourceIri(row.source, options)};
      Term agent = Term::iri(options.base + "agent/" + slug(row.source));
      Graph g;
      g.insert(activity, type, Term{provTerm("Activity")});
      g.insert(activity, Term{provTerm("wasAssociatedWith")}, agent);
      g.insert(agent, type, Term{provTerm("Agent")});
      g.insert(agent, label, Term::literal(row.source));
      sources.emplace(row.source, std::move(g));
    }
    rdf::Triple base{Term{options.entity}, Term{options.property}, Term::integer(row.value())};
    std::vector<ContextAssignment> contexts{
        {temporalDimension().name, intervalIri(row.year, options), intervals.at(row.year)},
        {provenanceDimension().name, sourceIri(row.source, options), sources.at(row.source)},
    };
    result.statements.emplace_back(std::move(base), std::move(contexts));
  }
  for (const auto& [_, g] : intervals) result.descriptions.insertAll(g);
  for (const auto& [_, g] : sources) result.descriptions.insertAll(g);
  return result;
}

}  // namespace ndfluents::ingest
