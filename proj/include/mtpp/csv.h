#pragma once

#include <string>
#include <vector>

namespace mtpp {

struct CsvRecord {
  int line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and line
// breaks; CRLF and LF endings are both accepted. Empty lines are skipped.
// Throws ParseError on an unterminated quote or stray characters after a
// closing quote.
std::vector<CsvRecord> ParseCsv(const std::string& text);

// One record terminated by "\n". Fields containing a comma, quote, CR or LF
// are quoted.
std::string CsvLine(const std::vector<std::string>& fields);

}  // namespace mtpp
