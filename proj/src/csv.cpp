#include "ndfluents/csv.hpp"

namespace ndfluents::csv {

std::vector<Record> read(std::string_view text) {
  std::vector<Record> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    Record rec{line, {}};
    std::string field;
    bool quoted = false, wasQuoted = false, endOfRecord = false;
    while (!endOfRecord) {
      if (i >= text.size()) {
        if (quoted) throw CsvError("unterminated quoted field", rec.line);
        break;
      }
      char c = text[i++];
      if (quoted) {
        if (c == '"') {
          if (i < text.size() && text[i] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        continue;
      }
      switch (c) {
        case '"':
          if (!field.empty() || wasQuoted) throw CsvError("quote inside an unquoted field", line);
          quoted = wasQuoted = true;
          break;
        case ',':
          rec.fields.push_back(std::move(field));
          field.clear();
          wasQuoted = false;
          break;
        case '\r':
          if (i < text.size() && text[i] == '\n') break;
          field += c;
          break;
        case '\n':
          ++line;
          endOfRecord = true;
          break;
        default:
          if (wasQuoted) throw CsvError("text after a closing quote", line);
          field += c;
      }
    }
    rec.fields.push_back(std::move(field));
    bool blank = rec.fields.size() == 1 && rec.fields[0].empty();
    if (!blank) out.push_back(std::move(rec));
  }
  return out;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string writeRow(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  return out + '\n';
}

}  // namespace ndfluents::csv
