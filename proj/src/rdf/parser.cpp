#include <cctype>
#include <map>
#include <optional>
#include <unordered_map>

#include "ndfluents/rdf/io.hpp"

namespace ndfluents::rdf {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

Format formatFromName(std::string_view name) {
  if (name == "nt" || name == "ntriples" || name == "n-triples") return Format::kNTriples;
  if (name == "nq" || name == "nquads" || name == "n-quads") return Format::kNQuads;
  if (name == "ttl" || name == "turtle") return Format::kTurtle;
  throw std::invalid_argument("unknown RDF format '" + std::string(name) + "'");
}

Format formatFromPath(std::string_view path) {
  auto dot = path.rfind('.');
  if (dot == std::string_view::npos) {
    throw std::invalid_argument("cannot infer RDF format from '" + std::string(path) + "'");
  }
  return formatFromName(path.substr(dot + 1));
}

// ---------------------------------------------------------------------------
// IRI resolution

namespace {

struct IriParts {
  std::optional<std::string> scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;
};

IriParts splitIri(std::string_view s) {
  IriParts parts;
  auto colon = s.find(':');
  auto delim = s.find_first_of("/?#");
  if (colon != std::string_view::npos && colon > 0 && (delim == std::string_view::npos || colon < delim) &&
      std::isalpha(static_cast<unsigned char>(s[0]))) {
    parts.scheme = std::string(s.substr(0, colon));
    s.remove_prefix(colon + 1);
  }
  if (s.starts_with("//")) {
    s.remove_prefix(2);
    auto end = s.find_first_of("/?#");
    parts.authority = std::string(s.substr(0, end));
    s = end == std::string_view::npos ? std::string_view{} : s.substr(end);
  }
  auto hash = s.find('#');
  if (hash != std::string_view::npos) {
    parts.fragment = std::string(s.substr(hash + 1));
    s = s.substr(0, hash);
  }
  auto question = s.find('?');
  if (question != std::string_view::npos) {
    parts.query = std::string(s.substr(question + 1));
    s = s.substr(0, question);
  }
  parts.path = std::string(s);
  return parts;
}

std::string removeDotSegments(std::string_view input) {
  std::string in(input);
  std::string out;
  while (!in.empty()) {
    if (in.starts_with("../")) {
      in.erase(0, 3);
    } else if (in.starts_with("./")) {
      in.erase(0, 2);
    } else if (in.starts_with("/./")) {
      in.erase(0, 2);
    } else if (in == "/.") {
      in = "/";
    } else if (in.starts_with("/../") || in == "/..") {
      in = in == "/.." ? "/" : in.substr(3);
      auto slash = out.rfind('/');
      out.erase(slash == std::string::npos ? 0 : slash);
    } else if (in == "." || in == "..") {
      in.clear();
    } else {
      auto start = in[0] == '/' ? 1 : 0;
      auto next = in.find('/', start);
      out += in.substr(0, next);
      in.erase(0, next == std::string::npos ? in.size() : next);
    }
  }
  return out;
}

std::string joinIri(const IriParts& p) {
  std::string out;
  if (p.scheme) out += *p.scheme + ":";
  if (p.authority) out += "//" + *p.authority;
  out += p.path;
  if (p.query) out += "?" + *p.query;
  if (p.fragment) out += "#" + *p.fragment;
  return out;
}

}  // namespace

std::string resolveIri(std::string_view base, std::string_view reference) {
  IriParts r = splitIri(reference);
  if (r.scheme) {
    r.path = removeDotSegments(r.path);
    return joinIri(r);
  }
  IriParts b = splitIri(base);
  IriParts t;
  t.scheme = b.scheme;
  t.fragment = r.fragment;
  if (r.authority) {
    t.authority = r.authority;
    t.path = removeDotSegments(r.path);
    t.query = r.query;
    return joinIri(t);
  }
  t.authority = b.authority;
  if (r.path.empty()) {
    t.path = b.path;
    t.query = r.query ? r.query : b.query;
  } else {
    if (r.path[0] == '/') {
      t.path = removeDotSegments(r.path);
    } else {
      std::string merged;
      if (b.authority && b.path.empty()) {
        merged = "/" + r.path;
      } else {
        auto slash = b.path.rfind('/');
        merged = (slash == std::string::npos ? "" : b.path.substr(0, slash + 1)) + r.path;
      }
      t.path = removeDotSegments(merged);
    }
    t.query = r.query;
  }
  return joinIri(t);
}

// ---------------------------------------------------------------------------
// Lexing

namespace {

bool isPnCharBase(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || static_cast<unsigned char>(c) >= 0x80;
}
bool isPnChar(char c) {
  return isPnCharBase(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

void appendUtf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view src) : src_(src) {}

  bool eof() const { return pos_ >= src_.size(); }
  char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }
  bool startsWith(std::string_view s) const { return src_.substr(pos_).starts_with(s); }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  char get() {
    if (eof()) fail("unexpected end of input");
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'" + foundSuffix());
    get();
  }

  // Skips spaces, tabs and comments; newlines too unless `stopAtNewline`.
  void skipWs(bool stopAtNewline = false) {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r') {
        get();
      } else if (c == '\n' && !stopAtNewline) {
        get();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  std::string foundSuffix() const {
    if (eof()) return ", found end of input";
    if (peek() == '\n') return ", found end of line";
    return std::string(", found '") + peek() + "'";
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column_); }

  // '<' ... '>' with \u escapes. Returns the raw (possibly relative) IRI.
  std::string readIriRef() {
    expect('<');
    std::string out;
    while (true) {
      if (eof()) fail("unterminated IRI");
      char c = get();
      if (c == '>') break;
      if (c == '\\') {
        out += readUnicodeEscape();
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail(std::string("illegal character in IRI: '") + c + "'");
      }
      out += c;
    }
    return out;
  }

  std::string readBlankLabel() {
    if (!startsWith("_:")) fail("expected blank node" + foundSuffix());
    get();
    get();
    std::string label;
    while (isPnChar(peek()) || peek() == '.') label += get();
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
      --column_;
    }
    if (label.empty()) fail("empty blank node label");
    return label;
  }

  std::string readString() {
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected string" + foundSuffix());
    bool longForm = peek(1) == quote && peek(2) == quote;
    if (longForm) {
      get();
      get();
      get();
    } else {
      get();
    }
    std::string out;
    while (true) {
      if (eof()) fail("unterminated string literal");
      char c = peek();
      if (longForm) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          get();
          get();
          get();
          break;
        }
      } else {
        if (c == quote) {
          get();
          break;
        }
        if (c == '\n' || c == '\r') fail("newline in string literal");
      }
      get();
      if (c == '\\') {
        char e = peek();
        switch (e) {
          case 't': out += '\t'; get(); break;
          case 'b': out += '\b'; get(); break;
          case 'n': out += '\n'; get(); break;
          case 'r': out += '\r'; get(); break;
          case 'f': out += '\f'; get(); break;
          case '"': out += '"'; get(); break;
          case '\'': out += '\''; get(); break;
          case '\\': out += '\\'; get(); break;
          case 'u': case 'U': out += readUnicodeEscape(); break;
          default: fail(std::string("invalid escape '\\") + e + "'");
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  std::string readLangTag() {
    expect('@');
    std::string tag;
    while (std::isalnum(static_cast<unsigned char>(peek())) || (peek() == '-' && !tag.empty())) {
      tag += get();
    }
    if (tag.empty() || !std::isalpha(static_cast<unsigned char>(tag[0]))) fail("invalid language tag");
    return tag;
  }

  // PN_PREFIX? ':' PN_LOCAL. Returns {prefix, local}.
  std::pair<std::string, std::string> readPrefixedName() {
    std::string prefix;
    while (isPnChar(peek()) || (peek() == '.' && !prefix.empty() && isPnChar(peek(1)))) prefix += get();
    if (peek() != ':') fail("expected prefixed name" + foundSuffix());
    get();
    std::string local;
    while (true) {
      char c = peek();
      if (isPnChar(c) || c == ':' || c == '%') {
        local += get();
      } else if (c == '.' && (isPnChar(peek(1)) || peek(1) == ':' || peek(1) == '%')) {
        local += get();
      } else if (c == '\\' && peek(1) != '\0') {
        get();
        local += get();
      } else {
        break;
      }
    }
    return {prefix, local};
  }

 private:
  std::string readUnicodeEscape() {
    char kind = get();
    int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail("invalid escape in IRI");
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      char h = get();
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail("invalid hex digit in escape");
      cp = cp * 16 + static_cast<unsigned long>(std::stoi(std::string(1, h), nullptr, 16));
    }
    std::string out;
    appendUtf8(out, cp);
    return out;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class BlankMapper {
 public:
  Term map(const std::string& label) {
    auto [it, inserted] = labels_.try_emplace(label, "");
    if (inserted) it->second = next();
    return Term::blank(it->second);
  }
  Term fresh() { return Term::blank(next()); }

 private:
  std::string next() { return "b" + std::to_string(counter_++); }
  std::unordered_map<std::string, std::string> labels_;
  std::size_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// N-Triples / N-Quads

// A term read but not yet validated, so that structural errors on a line are
// reported before IRI errors.
struct PendingTerm {
  enum class Kind { kIri, kBlank, kLiteral } kind;
  std::string text;
  std::string datatype;  // raw IRI, empty if none
  std::string language;
  std::size_t line;
  std::size_t column;
};

PendingTerm readLineTerm(Reader& in, bool allowLiteral) {
  PendingTerm t{PendingTerm::Kind::kIri, "", "", "", in.line(), in.column()};
  char c = in.peek();
  if (c == '<') {
    t.text = in.readIriRef();
  } else if (c == '_' && in.peek(1) == ':') {
    t.kind = PendingTerm::Kind::kBlank;
    t.text = in.readBlankLabel();
  } else if (c == '"' && allowLiteral) {
    t.kind = PendingTerm::Kind::kLiteral;
    t.text = in.readString();
    if (in.peek() == '@') {
      t.language = in.readLangTag();
    } else if (in.startsWith("^^")) {
      in.get();
      in.get();
      if (in.peek() != '<') in.fail("expected datatype IRI" + in.foundSuffix());
      t.datatype = in.readIriRef();
    }
  } else {
    in.fail("expected " + std::string(allowLiteral ? "IRI, blank node or literal" : "IRI or blank node") +
            in.foundSuffix());
  }
  return t;
}

Term resolvePending(const PendingTerm& t, BlankMapper& blanks) {
  auto absolute = [&](const std::string& iri) {
    if (!isAbsoluteIri(iri)) {
      throw IriResolutionError("relative IRI <" + iri + "> with no base", t.line, t.column);
    }
    return Iri{iri};
  };
  switch (t.kind) {
    case PendingTerm::Kind::kIri:
      return Term{absolute(t.text)};
    case PendingTerm::Kind::kBlank:
      return blanks.map(t.text);
    case PendingTerm::Kind::kLiteral:
      if (!t.language.empty()) return Term::langLiteral(t.text, t.language);
      if (!t.datatype.empty()) return Term::literal(t.text, absolute(t.datatype));
      return Term::literal(t.text);
  }
  return {};
}

template <typename Sink>
void parseLines(std::string_view document, bool quads, Sink&& sink) {
  Reader in(document);
  BlankMapper blanks;
  while (true) {
    in.skipWs();
    if (in.eof()) break;
    std::size_t line = in.line();
    auto s = readLineTerm(in, false);
    in.skipWs(true);
    if (in.peek() != '<') in.fail("expected predicate IRI" + in.foundSuffix());
    auto p = readLineTerm(in, false);
    in.skipWs(true);
    auto o = readLineTerm(in, true);
    in.skipWs(true);
    std::optional<PendingTerm> g;
    if (quads && in.peek() != '.') {
      if (in.peek() != '<') in.fail("graph label must be an IRI" + in.foundSuffix());
      g = readLineTerm(in, false);
      in.skipWs(true);
    }
    in.expect('.');
    in.skipWs(true);
    if (!in.eof() && in.peek() != '\n') in.fail("trailing content after '.'");
    if (in.line() != line && !in.eof()) in.fail("statement spans multiple lines");
    Term subject = resolvePending(s, blanks);
    Term predicate = resolvePending(p, blanks);
    Term object = resolvePending(o, blanks);
    std::optional<Iri> graph;
    if (g) graph = resolvePending(*g, blanks).asIri();
    sink(Triple{std::move(subject), std::move(predicate), std::move(object)}, graph);
  }
}

// ---------------------------------------------------------------------------
// Turtle subset

class TurtleParser {
 public:
  TurtleParser(std::string_view document, const ParseOptions& options)
      : in_(document), base_(options.base) {}

  Graph parse() {
    while (true) {
      in_.skipWs();
      if (in_.eof()) break;
      if (in_.startsWith("@prefix")) {
        skipKeyword(7);
        prefixDirective();
        in_.skipWs();
        in_.expect('.');
      } else if (in_.startsWith("@base")) {
        skipKeyword(5);
        baseDirective();
        in_.skipWs();
        in_.expect('.');
      } else if (keywordAhead("PREFIX")) {
        skipKeyword(6);
        prefixDirective();
      } else if (keywordAhead("BASE")) {
        skipKeyword(4);
        baseDirective();
      } else {
        triples();
        in_.skipWs();
        in_.expect('.');
      }
    }
    return std::move(graph_);
  }

 private:
  bool keywordAhead(std::string_view kw) const {
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(in_.peek(i))) != kw[i]) return false;
    }
    char after = in_.peek(kw.size());
    return after == ' ' || after == '\t';
  }

  void skipKeyword(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) in_.get();
  }

  void prefixDirective() {
    in_.skipWs();
    std::string prefix;
    while (isPnChar(in_.peek()) || in_.peek() == '.') prefix += in_.get();
    in_.expect(':');
    in_.skipWs();
    auto line = in_.line();
    auto col = in_.column();
    prefixes_[prefix] = resolve(in_.readIriRef(), line, col);
  }

  void baseDirective() {
    in_.skipWs();
    auto line = in_.line();
    auto col = in_.column();
    base_ = resolve(in_.readIriRef(), line, col);
  }

  std::string resolve(const std::string& raw, std::size_t line, std::size_t col) const {
    if (isAbsoluteIri(raw)) return raw;
    if (base_.empty()) throw IriResolutionError("relative IRI <" + raw + "> with no base", line, col);
    auto resolved = resolveIri(base_, raw);
    if (!isAbsoluteIri(resolved)) {
      throw IriResolutionError("cannot resolve <" + raw + "> against <" + base_ + ">", line, col);
    }
    return resolved;
  }

  Term iri() {
    auto line = in_.line();
    auto col = in_.column();
    if (in_.peek() == '<') return Term::iri(resolve(in_.readIriRef(), line, col));
    auto [prefix, local] = in_.readPrefixedName();
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) throw ParseError("undeclared prefix '" + prefix + ":'", line, col);
    auto full = it->second + local;
    if (!isAbsoluteIri(full)) throw ParseError("invalid IRI from prefixed name: " + full, line, col);
    return Term::iri(std::move(full));
  }

  bool atVerbA() const {
    if (in_.peek() != 'a') return false;
    char next = in_.peek(1);
    return next == ' ' || next == '\t' || next == '\n' || next == '\r' || next == '<' || next == '[' ||
           next == '"' || next == '_';
  }

  void triples() {
    if (in_.peek() == '[') {
      Term subject = blankNodePropertyList();
      in_.skipWs();
      if (in_.peek() != '.') predicateObjectList(subject);
      return;
    }
    Term subject;
    if (in_.peek() == '_' && in_.peek(1) == ':') {
      subject = blanks_.map(in_.readBlankLabel());
    } else if (in_.peek() == '(') {
      in_.fail("collections are not supported");
    } else if (in_.peek() == '"' || in_.peek() == '\'') {
      in_.fail("literal in subject position");
    } else {
      subject = iri();
    }
    in_.skipWs();
    predicateObjectList(subject);
  }

  // After '[' has been seen: either `[]` or `[ predicateObjectList ]`.
  Term blankNodePropertyList() {
    in_.expect('[');
    Term node = blanks_.fresh();
    in_.skipWs();
    if (in_.peek() != ']') predicateObjectList(node);
    in_.skipWs();
    in_.expect(']');
    return node;
  }

  void predicateObjectList(const Term& subject) {
    while (true) {
      in_.skipWs();
      Term predicate;
      if (atVerbA()) {
        in_.get();
        predicate = Term{vocabulary::rdfType()};
      } else {
        predicate = iri();
      }
      in_.skipWs();
      objectList(subject, predicate);
      in_.skipWs();
      if (in_.peek() != ';') break;
      while (in_.peek() == ';') {
        in_.get();
        in_.skipWs();
      }
      if (in_.peek() == '.' || in_.peek() == ']' || in_.eof()) break;
    }
  }

  void objectList(const Term& subject, const Term& predicate) {
    while (true) {
      in_.skipWs();
      Term o = object();
      graph_.insert(Triple{subject, predicate, std::move(o)});
      in_.skipWs();
      if (in_.peek() != ',') break;
      in_.get();
    }
  }

  Term object() {
    char c = in_.peek();
    if (c == '<') return iri();
    if (c == '_' && in_.peek(1) == ':') return blanks_.map(in_.readBlankLabel());
    if (c == '[') return blankNodePropertyList();
    if (c == '(') in_.fail("collections are not supported");
    if (c == '"' || c == '\'') return literal();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(in_.peek(1))))) {
      return numeric();
    }
    if (in_.startsWith("true") && !isPnChar(in_.peek(4)) && in_.peek(4) != ':') {
      skipKeyword(4);
      return Term::literal("true", xsd::boolean());
    }
    if (in_.startsWith("false") && !isPnChar(in_.peek(5)) && in_.peek(5) != ':') {
      skipKeyword(5);
      return Term::literal("false", xsd::boolean());
    }
    if (in_.eof() || c == '.' || c == ';' || c == ',' || c == '\n') {
      in_.fail("expected object" + in_.foundSuffix());
    }
    return iri();
  }

  Term literal() {
    std::string lexical = in_.readString();
    if (in_.peek() == '@') return Term::langLiteral(std::move(lexical), in_.readLangTag());
    if (in_.startsWith("^^")) {
      in_.get();
      in_.get();
      return Term::literal(std::move(lexical), iri().asIri());
    }
    return Term::literal(std::move(lexical));
  }

  Term numeric() {
    std::string text;
    if (in_.peek() == '+' || in_.peek() == '-') text += in_.get();
    auto digits = [&] {
      std::size_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(in_.peek()))) {
        text += in_.get();
        ++n;
      }
      return n;
    };
    std::size_t intDigits = digits();
    bool decimal = false;
    bool exponent = false;
    if (in_.peek() == '.' && std::isdigit(static_cast<unsigned char>(in_.peek(1)))) {
      text += in_.get();
      digits();
      decimal = true;
    }
    if (in_.peek() == 'e' || in_.peek() == 'E') {
      text += in_.get();
      if (in_.peek() == '+' || in_.peek() == '-') text += in_.get();
      if (digits() == 0) in_.fail("malformed exponent");
      exponent = true;
    }
    if (intDigits == 0 && !decimal) in_.fail("malformed number");
    if (exponent) return Term::literal(std::move(text), xsd::double_());
    if (decimal) return Term::literal(std::move(text), xsd::decimal());
    return Term::literal(std::move(text), xsd::integer());
  }

  Reader in_;
  std::string base_;
  std::map<std::string, std::string> prefixes_;
  BlankMapper blanks_;
  Graph graph_;
};

}  // namespace

Graph parseGraph(std::string_view document, Format format, const ParseOptions& options) {
  switch (format) {
    case Format::kTurtle:
      return TurtleParser(document, options).parse();
    case Format::kNTriples:
    case Format::kNQuads: {
      Graph graph;
      parseLines(document, format == Format::kNQuads,
                 [&](Triple t, const std::optional<Iri>&) { graph.insert(std::move(t)); });
      return graph;
    }
  }
  return {};
}

std::vector<Graph> parseQuads(std::string_view document) {
  Graph defaultGraph;
  std::map<Iri, Graph> named;
  parseLines(document, true, [&](Triple t, const std::optional<Iri>& g) {
    if (!g) {
      defaultGraph.insert(std::move(t));
      return;
    }
    auto [it, inserted] = named.try_emplace(*g, Graph{*g});
    it->second.insert(std::move(t));
  });
  std::vector<Graph> out;
  if (!defaultGraph.empty()) out.push_back(std::move(defaultGraph));
  for (auto& [name, g] : named) out.push_back(std::move(g));
  return out;
}

}  // namespace ndfluents::rdf
