#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ndfluents::csv {

class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Record {
  std::size_t line;  // 1-based line the record starts on
  std::vector<std::string> fields;
};

// RFC 4180 records: quoted fields may hold commas, doubled quotes and line
// breaks; CRLF is accepted. Blank lines are skipped.
std::vector<Record> read(std::string_view text);

// Quotes a field when needed.
std::string escape(std::string_view field);
std::string writeRow(const std::vector<std::string>& fields);

}  // namespace ndfluents::csv
