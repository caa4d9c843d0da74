#include "ndfluents/rdf/term.hpp"

#include <algorithm>
#include <cctype>

namespace ndfluents::rdf {

bool isAbsoluteIri(std::string_view iri) {
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = iri[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
      return false;
    }
  }
  for (char c : iri) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!isAbsoluteIri(value_)) {
    throw std::invalid_argument("not an absolute IRI: '" + value_ + "'");
  }
}

std::string_view Iri::localName() const {
  std::string_view v = value_;
  auto pos = v.find_last_of("#/:");
  return pos == std::string_view::npos ? v : v.substr(pos + 1);
}

std::ostream& operator<<(std::ostream& os, const Iri& iri) { return os << '<' << iri.str() << '>'; }

namespace vocabulary {
const Iri& rdfType() {
  static const Iri iri = vocab(ns::kRdf, "type");
  return iri;
}
const Iri& rdfLangString() {
  static const Iri iri = vocab(ns::kRdf, "langString");
  return iri;
}
}  // namespace vocabulary

Term Term::blank(std::string label) {
  if (label.empty()) throw std::invalid_argument("empty blank node label");
  Term t;
  t.kind_ = Kind::kBlank;
  t.value_ = std::move(label);
  return t;
}

Term Term::literal(std::string lexical, const Iri& datatype) {
  if (datatype == vocabulary::rdfLangString()) {
    throw std::invalid_argument("rdf:langString literal requires a language tag");
  }
  Term t;
  t.kind_ = Kind::kLiteral;
  t.value_ = std::move(lexical);
  t.datatype_ = datatype.str();
  return t;
}

Term Term::langLiteral(std::string lexical, std::string language) {
  if (language.empty()) throw std::invalid_argument("empty language tag");
  Term t;
  t.kind_ = Kind::kLiteral;
  t.value_ = std::move(lexical);
  t.datatype_ = vocabulary::rdfLangString().str();
  t.language_ = std::move(language);
  return t;
}

Term Term::integer(long long value) { return literal(std::to_string(value), xsd::integer()); }

Iri Term::asIri() const {
  if (!isIri()) throw std::logic_error("term is not an IRI: " + toNTriples(*this));
  return Iri{value_};
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (auto c = kind_ <=> other.kind_; c != 0) return c;
  if (kind_ == Kind::kBlank) {
    if (auto c = value_.size() <=> other.value_.size(); c != 0) return c;
  }
  if (auto c = value_ <=> other.value_; c != 0) return c;
  if (auto c = datatype_ <=> other.datatype_; c != 0) return c;
  return language_ <=> other.language_;
}

namespace {
void appendEscaped(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
}
}  // namespace

std::string toNTriples(const Term& term) {
  std::string out;
  switch (term.kind()) {
    case Term::Kind::kIri:
      out.reserve(term.value().size() + 2);
      out += '<';
      out += term.value();
      out += '>';
      break;
    case Term::Kind::kBlank:
      out = "_:" + term.value();
      break;
    case Term::Kind::kLiteral:
      out += '"';
      appendEscaped(out, term.value());
      out += '"';
      if (!term.language().empty()) {
        out += '@';
        out += term.language();
      } else if (term.datatype() != xsd::string().str()) {
        out += "^^<";
        out += term.datatype();
        out += '>';
      }
      break;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& term) { return os << toNTriples(term); }

}  // namespace ndfluents::rdf
