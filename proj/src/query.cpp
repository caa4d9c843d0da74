#include "ndfluents/query.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace ndfluents::query {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::string aggregateName(AggregateFn fn) {
  switch (fn) {
    case AggregateFn::kAvg: return "AVG";
    case AggregateFn::kCount: return "COUNT";
    case AggregateFn::kMin: return "MIN";
    case AggregateFn::kMax: return "MAX";
    case AggregateFn::kSum: return "SUM";
  }
  return "";
}

std::vector<std::string> Pattern::variables() const {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& tp : triples) {
    for (const Slot* slot : {&tp.subject, &tp.predicate, &tp.object}) {
      if (const auto* v = std::get_if<Variable>(slot); v && seen.insert(v->name).second) out.push_back(v->name);
    }
  }
  return out;
}

void Pattern::validate() const {
  auto vars = variables();
  auto known = [&](const std::string& v) { return std::find(vars.begin(), vars.end(), v) != vars.end(); };
  for (const auto& v : select) {
    if (!known(v)) throw QueryError("unknown variable ?" + v + " in SELECT");
  }
  if (group && !known(*group)) throw QueryError("unknown variable ?" + *group + " in GROUP");
  std::set<std::string> names;
  for (const auto& a : aggregates) {
    if (!known(a.variable)) throw QueryError("unknown variable ?" + a.variable + " in " + aggregateName(a.fn));
    if (!names.insert(a.name).second || (group && a.name == *group)) {
      throw QueryError("duplicate output column '" + a.name + "'");
    }
  }
  if (scale < 0 || scale > 30) throw QueryError("scale must be between 0 and 30");
}

std::string ResultTable::toCsv() const {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + field(cells[i]);
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

// ---------------------------------------------------------------------------
// Numbers

namespace {

std::optional<Rational> parseNumber(std::string_view lexical) {
  static const std::regex number(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
  std::cmatch m;
  if (lexical.empty() || !std::regex_match(lexical.begin(), lexical.end(), m, number)) return std::nullopt;
  std::string whole = m[2].str(), frac = m[3].str();
  if (whole.empty() && frac.empty()) return std::nullopt;
  // cpp_int reads a leading 0 as an octal prefix.
  std::string all = whole + frac;
  all.erase(0, std::min(all.find_first_not_of('0'), all.size() - 1));
  BigInt digits{all};
  long exponent = m[4].matched ? std::stol(m[4].str()) : 0;
  exponent -= static_cast<long>(frac.size());
  if (exponent < -400 || exponent > 400) return std::nullopt;
  BigInt ten = boost::multiprecision::pow(BigInt{10}, static_cast<unsigned>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational{digits * ten} : Rational{digits, ten};
  if (m[1].str() == "-") r = -r;
  return r;
}

// Half away from zero at `scale` decimals.
std::string formatDecimal(const Rational& value, int scale) {
  BigInt num = boost::multiprecision::numerator(value) * boost::multiprecision::pow(BigInt{10}, scale);
  BigInt den = boost::multiprecision::denominator(value);
  bool negative = num < 0;
  if (negative) num = -num;
  BigInt rounded = (2 * num + den) / (2 * den);
  std::string digits = rounded.str();
  if (digits.size() < static_cast<std::size_t>(scale) + 1) {
    digits.insert(0, static_cast<std::size_t>(scale) + 1 - digits.size(), '0');
  }
  if (scale > 0) digits.insert(digits.size() - static_cast<std::size_t>(scale), ".");
  return (negative && rounded != 0 ? "-" : "") + digits;
}

std::string formatNumber(const Rational& value, int scale) {
  if (boost::multiprecision::denominator(value) == 1) return boost::multiprecision::numerator(value).str();
  return formatDecimal(value, scale);
}

std::string cell(const Term& t) { return t.isBlank() ? "_:" + t.value() : t.value(); }

}  // namespace

// ---------------------------------------------------------------------------
// Matching

namespace {

const Term* resolveSlot(const Slot& slot, const Binding& binding) {
  if (const auto* t = std::get_if<Term>(&slot)) return t;
  auto it = binding.find(std::get<Variable>(slot).name);
  return it == binding.end() ? nullptr : &it->second;
}

class Matcher {
 public:
  Matcher(const Graph& graph, const std::vector<TriplePattern>& patterns)
      : graph_(graph), index_(graph), patterns_(patterns) {
    order();
  }

  std::set<Binding> run() {
    std::set<Binding> out;
    Binding binding;
    extend(0, binding, out);
    return out;
  }

 private:
  // Most constrained pattern first: fewest unbound variables, then the
  // smallest predicate extent.
  void order() {
    std::set<std::string> bound;
    std::vector<bool> used(patterns_.size(), false);
    for (std::size_t step = 0; step < patterns_.size(); ++step) {
      std::size_t best = patterns_.size();
      std::pair<int, std::size_t> bestKey{};
      for (std::size_t i = 0; i < patterns_.size(); ++i) {
        if (used[i]) continue;
        const auto& tp = patterns_[i];
        int unbound = 0;
        for (const Slot* s : {&tp.subject, &tp.predicate, &tp.object}) {
          if (const auto* v = std::get_if<Variable>(s); v && !bound.contains(v->name)) ++unbound;
        }
        std::size_t extent = graph_.size();
        if (const auto* p = std::get_if<Term>(&tp.predicate)) extent = index_.byPredicate(*p).size();
        std::pair<int, std::size_t> key{unbound, extent};
        if (best == patterns_.size() || key < bestKey) {
          best = i;
          bestKey = key;
        }
      }
      used[best] = true;
      order_.push_back(best);
      const auto& tp = patterns_[best];
      for (const Slot* s : {&tp.subject, &tp.predicate, &tp.object}) {
        if (const auto* v = std::get_if<Variable>(s)) bound.insert(v->name);
      }
    }
  }

  static bool bind(const Slot& slot, const Term& value, Binding& binding, std::vector<std::string>& added) {
    const auto* v = std::get_if<Variable>(&slot);
    if (!v) return std::get<Term>(slot) == value;
    auto [it, inserted] = binding.emplace(v->name, value);
    if (inserted) {
      added.push_back(v->name);
      return true;
    }
    return it->second == value;
  }

  void extend(std::size_t depth, Binding& binding, std::set<Binding>& out) {
    if (depth == order_.size()) {
      out.insert(binding);
      return;
    }
    const auto& tp = patterns_[order_[depth]];
    const Term* s = resolveSlot(tp.subject, binding);
    const Term* p = resolveSlot(tp.predicate, binding);
    const Term* o = resolveSlot(tp.object, binding);
    auto visit = [&](const Triple& t) {
      std::vector<std::string> added;
      if (bind(tp.subject, t.subject(), binding, added) && bind(tp.predicate, t.predicate(), binding, added) &&
          bind(tp.object, t.object(), binding, added)) {
        extend(depth + 1, binding, out);
      }
      for (const auto& name : added) binding.erase(name);
    };
    if (s || o || p) {
      const auto& candidates = s ? index_.bySubject(*s) : o ? index_.byObject(*o) : index_.byPredicate(*p);
      for (const Triple* t : candidates) visit(*t);
    } else {
      for (const auto& t : graph_) visit(t);
    }
  }

  const Graph& graph_;
  rdf::TripleIndex index_;
  const std::vector<TriplePattern>& patterns_;
  std::vector<std::size_t> order_;
};

}  // namespace

std::vector<Binding> solutions(const Graph& graph, const Pattern& pattern, const DimensionRegistry& dims,
                               const ContextualizeOptions& options) {
  pattern.validate();
  std::set<Binding> found = Matcher(graph, pattern.triples).run();
  std::vector<Binding> out;
  if (!pattern.context) return {found.begin(), found.end()};
  dims.get(pattern.context->dimension);
  PartIndex parts(graph, dims, options);
  for (const auto& b : found) {
    bool keep = true;
    for (const auto& [name, value] : b) {
      if (!parts.isPart(value)) continue;
      const auto& contexts = parts.resolve(value).contexts;
      auto it = contexts.find(pattern.context->dimension);
      if (it == contexts.end() || it->second != pattern.context->context) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(b);
  }
  return out;
}

namespace {

std::string aggregate(const Aggregate& agg, const std::vector<const Binding*>& group, int scale) {
  std::vector<Term> values;
  for (const Binding* b : group) values.push_back(b->at(agg.variable));
  if (agg.distinct) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
  if (agg.fn == AggregateFn::kCount) return std::to_string(values.size());
  std::vector<Rational> numbers;
  for (const Term& v : values) {
    auto n = v.isLiteral() ? parseNumber(v.value()) : std::nullopt;
    if (!n) throw QueryError(aggregateName(agg.fn) + " over a non-numeric value: " + toNTriples(v));
    numbers.push_back(*n);
  }
  Rational sum = 0;
  for (const auto& n : numbers) sum += n;
  switch (agg.fn) {
    case AggregateFn::kSum: return formatNumber(sum, scale);
    case AggregateFn::kAvg: return formatDecimal(sum / static_cast<long>(numbers.size()), scale);
    case AggregateFn::kMin: return formatNumber(*std::min_element(numbers.begin(), numbers.end()), scale);
    case AggregateFn::kMax: return formatNumber(*std::max_element(numbers.begin(), numbers.end()), scale);
    case AggregateFn::kCount: break;
  }
  return "";
}

}  // namespace

ResultTable match(const Graph& graph, const Pattern& pattern, const DimensionRegistry& dims,
                  const ContextualizeOptions& options) {
  auto sols = solutions(graph, pattern, dims, options);
  ResultTable table;
  if (pattern.aggregates.empty() && !pattern.group) {
    table.columns = pattern.select.empty() ? pattern.variables() : pattern.select;
    for (const auto& b : sols) {
      std::vector<std::string> row;
      for (const auto& c : table.columns) row.push_back(cell(b.at(c)));
      table.rows.push_back(std::move(row));
    }
    return table;
  }

  if (pattern.group) table.columns.push_back(*pattern.group);
  for (const auto& a : pattern.aggregates) table.columns.push_back(a.name);
  std::map<std::optional<Term>, std::vector<const Binding*>> groups;
  for (const auto& b : sols) {
    groups[pattern.group ? std::optional<Term>(b.at(*pattern.group)) : std::nullopt].push_back(&b);
  }

  std::vector<std::pair<std::optional<Term>, std::vector<const Binding*>>> ordered(groups.begin(), groups.end());
  bool numeric = std::all_of(ordered.begin(), ordered.end(), [](const auto& g) {
    return g.first && g.first->isLiteral() && parseNumber(g.first->value());
  });
  if (numeric) {
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      return *parseNumber(a.first->value()) < *parseNumber(b.first->value());
    });
  }
  for (const auto& [key, members] : ordered) {
    std::vector<std::string> row;
    if (key) row.push_back(cell(*key));
    for (const auto& a : pattern.aggregates) row.push_back(aggregate(a, members, pattern.scale));
    table.rows.push_back(std::move(row));
  }
  return table;
}

Graph contextSlice(const Graph& graph, const DimensionRegistry& dims, const Iri& context,
                   const ContextualizeOptions& options) {
  PartIndex parts(graph, dims, options);
  const auto& index = parts.index();
  const Term type{rdf::vocabulary::rdfType()};
  const Term member{combinedMemberPredicate(options)};
  Graph out;
  std::set<Term> scaffolded;
  auto scaffold = [&](const Term& part) {
    for (const Term& p : parts.resolve(part).chain) {
      if (!scaffolded.insert(p).second) continue;
      for (const Triple* t : index.bySubject(p)) {
        if (parts.isScaffolding(*t)) out.insert(*t);
      }
      for (const Term& target : parts.extentTargets(p)) {
        for (const Triple* t : index.bySubject(target)) {
          if (t->predicate() == type || t->predicate() == member) out.insert(*t);
        }
      }
    }
  };
  for (const auto& t : graph) {
    if (parts.isScaffolding(t) || !parts.isPart(t.subject())) continue;
    const auto& contexts = parts.resolve(t.subject()).contexts;
    bool inContext = std::any_of(contexts.begin(), contexts.end(),
                                 [&](const auto& entry) { return entry.second == context; });
    if (!inContext) continue;
    out.insert(t);
    scaffold(t.subject());
    if (parts.isPart(t.object())) scaffold(t.object());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pattern files

namespace {

class LineReader {
 public:
  LineReader(std::string_view line, std::size_t lineNo, const rdf::PrefixMap& prefixes)
      : s_(line), line_(lineNo), prefixes_(prefixes) {}

  bool atEnd() {
    skipWs();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  // A bare word up to the next whitespace.
  std::string word() {
    skipWs();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("unexpected end of line");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string variable() {
    std::string w = word();
    if (w.size() < 2 || w[0] != '?') fail("expected a variable, got '" + w + "'");
    return w.substr(1);
  }

  Slot slot() {
    skipWs();
    if (pos_ >= s_.size()) fail("expected a term");
    char c = s_[pos_];
    if (c == '?') return Variable{variable()};
    if (c == '<') return Term{iriRef()};
    if (c == '"') return literal();
    std::string w = word();
    if (w == "a") return Term{rdf::vocabulary::rdfType()};
    if (w == "true" || w == "false") return Term::literal(w, rdf::xsd::boolean());
    static const std::regex integer(R"([+-]?\d+)"), decimal(R"([+-]?\d*\.\d+)"),
        dbl(R"([+-]?(\d+\.?\d*|\.\d+)[eE][+-]?\d+)");
    if (std::regex_match(w, integer)) return Term::literal(w, rdf::xsd::integer());
    if (std::regex_match(w, decimal)) return Term::literal(w, rdf::xsd::decimal());
    if (std::regex_match(w, dbl)) return Term::literal(w, rdf::xsd::double_());
    return Term{prefixed(w)};
  }

  Iri iriRef() {
    skipWs();
    if (pos_ >= s_.size() || s_[pos_] != '<') fail("expected '<'");
    auto end = s_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated IRI");
    std::string value(s_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    if (!rdf::isAbsoluteIri(value)) fail("relative or invalid IRI <" + value + ">");
    return Iri{value};
  }

  Iri iriOrPrefixed() {
    skipWs();
    if (pos_ < s_.size() && s_[pos_] == '<') return iriRef();
    return prefixed(word());
  }

  Iri prefixed(const std::string& w) {
    auto colon = w.find(':');
    if (colon == std::string::npos) fail("unknown token '" + w + "'");
    std::string prefix = w.substr(0, colon);
    for (const auto& [p, ns] : prefixes_) {
      if (p == prefix) return Iri{ns + w.substr(colon + 1)};
    }
    fail("undeclared prefix '" + prefix + ":'");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw QueryError("line " + std::to_string(line_) + ": " + msg);
  }

 private:
  void skipWs() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Term literal() {
    std::string lex;
    ++pos_;
    for (;;) {
      if (pos_ >= s_.size()) fail("unterminated string");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated string");
        char e = s_[pos_++];
        switch (e) {
          case 'n': lex += '\n'; break;
          case 't': lex += '\t'; break;
          case 'r': lex += '\r'; break;
          case '"': lex += '"'; break;
          case '\\': lex += '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
        continue;
      }
      lex += c;
    }
    if (pos_ < s_.size() && s_[pos_] == '@') {
      std::size_t start = ++pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
      if (start == pos_) fail("empty language tag");
      return Term::langLiteral(lex, std::string(s_.substr(start, pos_ - start)));
    }
    if (s_.substr(pos_).starts_with("^^")) {
      pos_ += 2;
      return Term::literal(lex, iriOrPrefixed());
    }
    return Term::literal(lex);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const rdf::PrefixMap& prefixes_;
};

AggregateFn aggregateFromName(const std::string& name, const LineReader& r) {
  for (auto fn : {AggregateFn::kAvg, AggregateFn::kCount, AggregateFn::kMin, AggregateFn::kMax, AggregateFn::kSum}) {
    if (aggregateName(fn) == name) return fn;
  }
  r.fail("unknown aggregate '" + name + "' (expected AVG, COUNT, MIN, MAX or SUM)");
}

}  // namespace

Pattern parsePattern(std::string_view text, const rdf::PrefixMap& basePrefixes) {
  Pattern pattern;
  rdf::PrefixMap prefixes = basePrefixes;
  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineNo;
    LineReader r(line, lineNo, prefixes);
    if (r.atEnd()) continue;
    std::string_view trimmed = line.substr(line.find_first_not_of(" \t"));
    auto keyword = [&](std::string_view kw) {
      return trimmed.starts_with(kw) && (trimmed.size() == kw.size() || std::isspace(static_cast<unsigned char>(trimmed[kw.size()])));
    };
    try {
      if (keyword("PREFIX")) {
        r.word();
        std::string name = r.word();
        if (name.empty() || name.back() != ':') r.fail("PREFIX name must end with ':'");
        Iri ns = r.iriRef();
        name.pop_back();
        std::erase_if(prefixes, [&](const auto& p) { return p.first == name; });
        prefixes.emplace_back(name, ns.str());
      } else if (keyword("SELECT")) {
        r.word();
        while (!r.atEnd()) pattern.select.push_back(r.variable());
      } else if (keyword("AGG")) {
        r.word();
        Aggregate agg{aggregateFromName(r.word(), r), "", "", false};
        std::string next = r.word();
        if (next == "DISTINCT") {
          agg.distinct = true;
          next = r.word();
        }
        if (next.size() < 2 || next[0] != '?') r.fail("expected a variable after the aggregate");
        agg.variable = next.substr(1);
        if (r.word() != "AS") r.fail("expected AS");
        agg.name = r.word();
        pattern.aggregates.push_back(std::move(agg));
      } else if (keyword("GROUP")) {
        r.word();
        if (pattern.group) r.fail("only one GROUP variable is supported");
        pattern.group = r.variable();
      } else if (keyword("CONTEXT")) {
        r.word();
        std::string dim = r.word();
        pattern.context = ContextFilter{dim, r.iriOrPrefixed()};
      } else if (keyword("SCALE")) {
        r.word();
        std::string n = r.word();
        if (n.empty() || !std::all_of(n.begin(), n.end(), ::isdigit)) r.fail("SCALE expects a non-negative integer");
        pattern.scale = std::stoi(n);
      } else {
        TriplePattern tp{r.slot(), r.slot(), r.slot()};
        if (!r.atEnd() && r.word() != ".") r.fail("expected '.' or end of line after three terms");
        if (!r.atEnd()) r.fail("trailing content after '.'");
        if (const auto* p = std::get_if<Term>(&tp.predicate); p && !p->isIri()) r.fail("predicate must be an IRI");
        if (const auto* s = std::get_if<Term>(&tp.subject); s && s->isLiteral()) r.fail("subject cannot be a literal");
        pattern.triples.push_back(std::move(tp));
      }
      if (!r.atEnd()) r.fail("trailing content");
    } catch (const std::invalid_argument& e) {
      throw QueryError("line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  if (pattern.triples.empty()) throw QueryError("pattern has no triple patterns");
  pattern.validate();
  return pattern;
}

}  // namespace ndfluents::query
