#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ndfluents/contextualizer.hpp"
#include "ndfluents/rdf/io.hpp"
#include "ndfluents/vocabulary.hpp"

namespace ndfluents {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A property the user wants contextualized with its own axioms.
struct PropertySpec {
  std::string name;
  Iri iri;
  // The related contextual property; minted from `iri` when absent.
  std::optional<Iri> contextual;
  std::optional<Iri> domain;
  std::optional<Iri> range;
  // Super-property of the contextual property; nd:contextualProperty or
  // nd:contextualDatatypeProperty by default.
  std::optional<Iri> super;
  PropertyKind kind = PropertyKind::kObject;
};

struct Config {
  DimensionRegistry dims = DimensionRegistry::standard();
  ContextualizeOptions contextualize;
  bool datatypeAxioms = true;
  bool restrictionAxioms = true;
  bool sameExtent = false;
  std::vector<PropertySpec> properties;
  // Standard prefixes, the vocabulary namespaces, then user prefixes.
  rdf::PrefixMap prefixes;

  Config();

  // Checks model/nesting consistency and that every property is usable.
  void validate() const;
};

// INI file (comments start with ';' on their own line):
//
//   [general]
//   namespace = http://purl.org/NET/ndfluents#
//   ; multi-context-part, contexts-in-context or combined-extent
//   model = contexts-in-context
//   ; outermost first, contexts-in-context only
//   nesting = provenance, temporal
//   ; suffix or hash
//   minting = suffix
//   separator = @
//   ; related or keep-base
//   predicate_mode = related
//   datatype_axioms = true
//   restriction_axioms = true
//   same_extent = false
//
//   [prefixes]
//   ex = http://example.org/
//
//   [dimension:trust]
//   ; a preset (temporal, provenance), a namespace for generated names, or
//   ; all six of part_class, context_class, part_of, extent, property,
//   ; data_property; explicit keys override the others
//   namespace = http://example.org/trust#
//
//   [property:capitalOf]
//   iri = ex:capitalOf
//   contextual = ex:contextualCapitalOf
//   domain = ex:City
//   range = ex:Country
//   ; object or data
//   kind = object
//
// Without any [dimension:*] section the temporal and provenance presets are
// registered. Values may use declared prefixes.
Config loadConfig(const std::string& path);
Config parseConfig(std::string_view text);

// Sets one [general] key; used for command-line overrides too.
void applyGeneralSetting(Config& config, const std::string& key, const std::string& value);

// The TBox modules selected by the configuration, by output file stem:
// core, datatype, dimension-<name>, restrictions-<name>, transitive,
// functional-extent, combined-<a>-<b>, properties.
std::vector<std::pair<std::string, std::vector<Axiom>>> ontologyModules(const Config& config);

// All module axioms, deduplicated.
std::vector<Axiom> allAxioms(const Config& config);

}  // namespace ndfluents
