#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ndfluents::rdf {

namespace ns {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

// Returns true if `iri` has a scheme and contains no characters that are
// illegal inside an IRIREF.
bool isAbsoluteIri(std::string_view iri);

// An absolute IRI. Construction validates; the string is immutable after.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value);

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  // Text after the last '#', '/' or ':'.
  std::string_view localName() const;

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

std::ostream& operator<<(std::ostream& os, const Iri& iri);

// Convenience for building vocabulary IRIs: `vocab("http://x#", "Foo")`.
inline Iri vocab(std::string_view ns, std::string_view local) {
  std::string s{ns};
  s += local;
  return Iri{std::move(s)};
}

namespace xsd {
inline const Iri& string() {
  static const Iri iri = vocab(ns::kXsd, "string");
  return iri;
}
inline const Iri& integer() {
  static const Iri iri = vocab(ns::kXsd, "integer");
  return iri;
}
inline const Iri& decimal() {
  static const Iri iri = vocab(ns::kXsd, "decimal");
  return iri;
}
inline const Iri& double_() {
  static const Iri iri = vocab(ns::kXsd, "double");
  return iri;
}
inline const Iri& boolean() {
  static const Iri iri = vocab(ns::kXsd, "boolean");
  return iri;
}
}  // namespace xsd

namespace vocabulary {
const Iri& rdfType();
const Iri& rdfLangString();
}  // namespace vocabulary

// An RDF term: IRI, blank node or literal.
//
// Ordering is total: IRIs sort before blank nodes, blank nodes before
// literals. Blank labels compare by length first so that `b2 < b10`.
class Term {
 public:
  enum class Kind : std::uint8_t { kIri = 0, kBlank = 1, kLiteral = 2 };

  Term() = default;
  // NOLINTNEXTLINE(google-explicit-constructor)
  Term(const Iri& iri) : kind_(Kind::kIri), value_(iri.str()) {}

  static Term iri(std::string value) { return Term{Iri{std::move(value)}}; }
  static Term blank(std::string label);
  static Term literal(std::string lexical, const Iri& datatype = xsd::string());
  static Term langLiteral(std::string lexical, std::string language);
  static Term integer(long long value);

  Kind kind() const { return kind_; }
  bool isIri() const { return kind_ == Kind::kIri; }
  bool isBlank() const { return kind_ == Kind::kBlank; }
  bool isLiteral() const { return kind_ == Kind::kLiteral; }

  // IRI string, blank label (without "_:") or literal lexical form.
  const std::string& value() const { return value_; }
  // Datatype IRI string; empty for non-literals.
  const std::string& datatype() const { return datatype_; }
  // Language tag; empty when absent.
  const std::string& language() const { return language_; }

  // Throws std::logic_error when the term is not an IRI.
  Iri asIri() const;

  std::strong_ordering operator<=>(const Term& other) const;
  bool operator==(const Term& other) const = default;

 private:
  Kind kind_ = Kind::kIri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

// N-Triples rendering of a single term.
std::string toNTriples(const Term& term);
std::ostream& operator<<(std::ostream& os, const Term& term);

}  // namespace ndfluents::rdf

template <>
struct std::hash<ndfluents::rdf::Term> {
  std::size_t operator()(const ndfluents::rdf::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.value());
    h ^= std::hash<std::string>{}(t.datatype()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ (static_cast<std::size_t>(t.kind()) << 1);
  }
};
