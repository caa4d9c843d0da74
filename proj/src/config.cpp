#include "ndfluents/config.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace ndfluents {

namespace pt = boost::property_tree;

Config::Config() {
  prefixes = rdf::standardPrefixes();
  prefixes.emplace_back("nd", std::string(kNdFluentsNamespace));
  prefixes.emplace_back("fd", std::string(kFourDFluentsNamespace));
  prefixes.emplace_back("ndprov", std::string(kProvenanceNamespace));
  prefixes.emplace_back("ndc", std::string(kCombinedNamespace));
  prefixes.emplace_back("ctx", contextualize.combinedContextNamespace);
}

void Config::validate() const {
  const auto& model = contextualize.model;
  if (model.kind == CombinationModel::Kind::kContextsInContext) {
    if (model.nesting.empty()) throw ConfigError("contexts-in-context needs a nesting order (general.nesting)");
    std::set<std::string> seen;
    for (const auto& n : model.nesting) {
      if (!dims.find(n)) throw ConfigError("nesting names unregistered dimension '" + n + "'");
      if (!seen.insert(n).second) throw ConfigError("nesting lists '" + n + "' twice");
    }
  } else if (!model.nesting.empty()) {
    throw ConfigError("a nesting order only applies to contexts-in-context");
  }
  if (contextualize.minting.separator.empty()) throw ConfigError("the minting separator cannot be empty");
  for (const auto& p : properties) {
    if (p.contextual && *p.contextual == p.iri && contextualize.predicates == PredicateMode::kRelated) {
      throw ConfigError("property '" + p.name + "': the contextual property must differ from the original");
    }
  }
}

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parseBool(const std::string& key, const std::string& value) {
  std::string v = trim(value);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<std::string> splitList(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Iri expand(const Config& config, const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  if (v.size() >= 2 && v.front() == '<' && v.back() == '>') v = v.substr(1, v.size() - 2);
  auto colon = v.find(':');
  if (colon != std::string::npos && v.compare(colon, 3, "://") != 0) {
    std::string prefix = v.substr(0, colon);
    for (const auto& [p, ns] : config.prefixes) {
      if (p == prefix) return Iri{ns + v.substr(colon + 1)};
    }
  }
  if (!rdf::isAbsoluteIri(v)) throw ConfigError(key + ": not an absolute IRI or known prefixed name: '" + raw + "'");
  return Iri{v};
}

void rebuildRegistry(Config& config, const CoreVocabulary& core, const std::vector<ContextDimension>& dims) {
  DimensionRegistry registry(core, config.dims.combinedNamespace());
  for (const auto& d : dims) registry.add(d);
  config.dims = std::move(registry);
}

ContextDimension dimensionFromSection(const Config& config, const std::string& name, const pt::ptree& section) {
  std::optional<ContextDimension> dim;
  auto preset = section.get_optional<std::string>("preset");
  auto ns = section.get_optional<std::string>("namespace");
  if (preset) {
    std::string p = trim(*preset);
    if (p == "temporal") {
      dim = ns ? temporalDimension(trim(*ns)) : temporalDimension();
    } else if (p == "provenance") {
      dim = ns ? provenanceDimension(trim(*ns)) : provenanceDimension();
    } else {
      throw ConfigError("dimension:" + name + ": unknown preset '" + p + "' (expected temporal or provenance)");
    }
    dim->name = name;
  } else if (ns) {
    dim = makeDimension(name, trim(*ns));
  }
  const std::pair<const char*, Iri ContextDimension::*> fields[] = {
      {"part_class", &ContextDimension::partClass},   {"context_class", &ContextDimension::contextClass},
      {"part_of", &ContextDimension::partOfProp},      {"extent", &ContextDimension::extentProp},
      {"property", &ContextDimension::contextualProp}, {"data_property", &ContextDimension::contextualDataProp},
  };
  if (!dim) {
    for (const auto& [key, _] : fields) {
      if (!section.get_optional<std::string>(key)) {
        throw ConfigError("dimension:" + name + ": give a preset, a namespace, or all six IRIs (missing " + key + ")");
      }
    }
    dim = ContextDimension{name, {}, {}, {}, {}, {}, {}};
  }
  for (const auto& [key, member] : fields) {
    if (auto v = section.get_optional<std::string>(key)) (*dim).*member = expand(config, "dimension:" + name + "." + key, *v);
  }
  for (const auto& [key, _] : section) {
    static const std::set<std::string> known{"preset",  "namespace", "part_class",   "context_class",
                                             "part_of", "extent",    "property",     "data_property"};
    if (!known.contains(key)) throw ConfigError("dimension:" + name + ": unknown key '" + key + "'");
  }
  return *dim;
}

PropertySpec propertyFromSection(const Config& config, const std::string& name, const pt::ptree& section) {
  auto where = "property:" + name;
  auto iri = section.get_optional<std::string>("iri");
  if (!iri) throw ConfigError(where + ": missing iri");
  PropertySpec spec{name, expand(config, where + ".iri", *iri), {}, {}, {}, {}, PropertyKind::kObject};
  for (const auto& [key, node] : section) {
    const std::string value = node.data();
    if (key == "iri") continue;
    if (key == "contextual") {
      spec.contextual = expand(config, where + ".contextual", value);
    } else if (key == "domain") {
      spec.domain = expand(config, where + ".domain", value);
    } else if (key == "range") {
      spec.range = expand(config, where + ".range", value);
    } else if (key == "super") {
      spec.super = expand(config, where + ".super", value);
    } else if (key == "kind") {
      std::string k = trim(value);
      if (k == "object") {
        spec.kind = PropertyKind::kObject;
      } else if (k == "data") {
        spec.kind = PropertyKind::kData;
      } else {
        throw ConfigError(where + ".kind: expected object or data, got '" + value + "'");
      }
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  return spec;
}

}  // namespace

void applyGeneralSetting(Config& config, const std::string& key, const std::string& rawValue) {
  std::string value = trim(rawValue);
  auto& opts = config.contextualize;
  if (key == "namespace") {
    if (!rdf::isAbsoluteIri(value)) throw ConfigError("namespace: not an absolute IRI: '" + value + "'");
    rebuildRegistry(config, CoreVocabulary(value), config.dims.dimensions());
    for (auto& [p, ns] : config.prefixes) {
      if (p == "nd") ns = value;
    }
  } else if (key == "model") {
    try {
      opts.model.kind = modelFromName(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
  } else if (key == "nesting") {
    opts.model.nesting = splitList(value);
  } else if (key == "minting") {
    if (value == "suffix") {
      opts.minting.mode = MintingPolicy::Mode::kSuffix;
    } else if (value == "hash") {
      opts.minting.mode = MintingPolicy::Mode::kHash;
    } else {
      throw ConfigError("minting: expected suffix or hash, got '" + value + "'");
    }
  } else if (key == "separator") {
    opts.minting.separator = value;
  } else if (key == "predicate_mode") {
    if (value == "related") {
      opts.predicates = PredicateMode::kRelated;
    } else if (value == "keep-base") {
      opts.predicates = PredicateMode::kKeepBase;
    } else {
      throw ConfigError("predicate_mode: expected related or keep-base, got '" + value + "'");
    }
  } else if (key == "datatype_axioms") {
    config.datatypeAxioms = parseBool(key, value);
  } else if (key == "restriction_axioms") {
    config.restrictionAxioms = parseBool(key, value);
  } else if (key == "same_extent") {
    config.sameExtent = parseBool(key, value);
  } else {
    throw ConfigError("general: unknown key '" + key + "'");
  }
}

Config parseConfig(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  Config config;
  if (auto prefixes = tree.get_child_optional("prefixes")) {
    for (const auto& [name, node] : *prefixes) {
      std::string ns = trim(node.data());
      if (!rdf::isAbsoluteIri(ns)) throw ConfigError("prefixes." + name + ": not an absolute IRI: '" + ns + "'");
      std::erase_if(config.prefixes, [&](const auto& p) { return p.first == name; });
      config.prefixes.emplace_back(name, ns);
    }
  }
  if (auto general = tree.get_child_optional("general")) {
    if (auto ns = general->get_optional<std::string>("namespace")) applyGeneralSetting(config, "namespace", *ns);
    for (const auto& [key, node] : *general) {
      if (key != "namespace") applyGeneralSetting(config, key, node.data());
    }
  }
  std::vector<ContextDimension> dims;
  for (const auto& [section, node] : tree) {
    if (section.starts_with("dimension:")) {
      dims.push_back(dimensionFromSection(config, section.substr(10), node));
    } else if (section.starts_with("property:")) {
      config.properties.push_back(propertyFromSection(config, section.substr(9), node));
    } else if (section != "general" && section != "prefixes") {
      throw ConfigError("unknown section [" + section + "]");
    }
  }
  if (!dims.empty()) {
    try {
      rebuildRegistry(config, config.dims.core(), dims);
    } catch (const VocabularyError& e) {
      throw ConfigError(e.what());
    }
  }
  for (const auto& p : config.properties) {
    if (p.contextual) config.contextualize.relatedProperties[p.iri] = *p.contextual;
  }
  config.validate();
  return config;
}

Config loadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseConfig(ss.str());
}

std::vector<std::pair<std::string, std::vector<Axiom>>> ontologyModules(const Config& config) {
  const CoreVocabulary& core = config.dims.core();
  const auto& dims = config.dims.dimensions();
  std::vector<std::pair<std::string, std::vector<Axiom>>> out;
  out.emplace_back("core", coreAxioms(core));
  if (config.datatypeAxioms) out.emplace_back("datatype", datatypeAxioms(core));
  for (const auto& d : dims) out.emplace_back("dimension-" + d.name, dimensionModule(d, core));
  if (config.restrictionAxioms) {
    for (const auto& d : dims) out.emplace_back("restrictions-" + d.name, dimensionRestrictionAxioms(d, core));
  }
  switch (config.contextualize.model.kind) {
    case CombinationModel::Kind::kContextsInContext:
      out.emplace_back("transitive", std::vector<Axiom>{transitivityAxiom(core)});
      break;
    case CombinationModel::Kind::kCombinedExtent:
      out.emplace_back("functional-extent", std::vector<Axiom>{functionalExtentAxiom(core)});
      for (std::size_t mask = 1; dims.size() <= 12 && mask < (std::size_t{1} << dims.size()); ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<ContextDimension> members;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < dims.size(); ++i) {
          if (mask & (std::size_t{1} << i)) {
            members.push_back(dims[i]);
            names.push_back(dims[i].name);
          }
        }
        std::sort(names.begin(), names.end());
        std::string stem = "combined";
        for (const auto& n : names) stem += "-" + n;
        ContextDimension combined = combineDimensions(members, config.dims.combinedNamespace());
        out.emplace_back(stem, combinedDimensionModule(members, combined));
      }
      break;
    case CombinationModel::Kind::kMultiContextPart:
      break;
  }
  if (!config.properties.empty()) {
    std::vector<Axiom> props;
    for (const auto& p : config.properties) {
      bool data = p.kind == PropertyKind::kData;
      Iri super = p.super ? *p.super : data ? core.contextualDatatypeProperty() : core.contextualProperty();
      if (config.contextualize.predicates == PredicateMode::kKeepBase) {
        props.push_back(axiom::SubPropertyOf{p.iri, super, p.kind});
        continue;
      }
      Iri contextual = contextualPredicate(p.iri, config.contextualize);
      for (auto& a : relatedContextualProperty(p.iri, contextual, p.domain, data ? std::nullopt : p.range, super,
                                               core)) {
        if (auto* sub = std::get_if<axiom::SubPropertyOf>(&a)) sub->kind = p.kind;
        props.push_back(std::move(a));
      }
      props.push_back(axiom::Declaration{contextual, data ? EntityKind::kDataProperty : EntityKind::kObjectProperty});
    }
    out.emplace_back("properties", std::move(props));
  }
  return out;
}

std::vector<Axiom> allAxioms(const Config& config) {
  std::vector<Axiom> out;
  std::set<Axiom> seen;
  for (const auto& [_, axioms] : ontologyModules(config)) {
    for (const auto& a : axioms) {
      if (seen.insert(a).second) out.push_back(a);
    }
  }
  return out;
}

}  // namespace ndfluents
