#pragma once

#include <string>
#include <vector>

#include "ndfluents/contextualizer.hpp"
#include "ndfluents/rdf/io.hpp"

namespace ndfluents {

class AnnotatedFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Statements plus the triples describing their contexts.
struct AnnotatedDataset {
  std::vector<AnnotatedStatement> statements;
  rdf::Graph descriptions;
};

// N-Quads whose graph labels name context bundles; the default graph holds
// context descriptions. The sidecar CSV has the header
// `bundle,dimension,context`, one row per (bundle, dimension).
AnnotatedDataset readBundledQuads(std::string_view nquads, std::string_view bundlesCsv);

struct BundledQuads {
  std::string nquads;
  std::string bundlesCsv;
};

// Bundles are named `urn:ndfluents:bundle:<digest of the context set>`.
BundledQuads writeBundledQuads(const AnnotatedDataset& data);

// Direct CSV: `subject,predicate,object,objectType,dim1,ctx1,dim2,ctx2,...`
// with an optional header row starting with `subject`. objectType is `iri`,
// `string`, `@<lang>`, or a datatype IRI (`xsd:` names are accepted).
// Descriptions cannot be expressed and are left empty.
AnnotatedDataset readStatementsCsv(std::string_view text);
std::string writeStatementsCsv(const std::vector<AnnotatedStatement>& statements);

}  // namespace ndfluents
