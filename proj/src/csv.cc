#include "mtpp/csv.h"

#include "mtpp/errors.h"

namespace mtpp {

std::vector<CsvRecord> ParseCsv(const std::string& text) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  int line = 1;
  bool in_quotes = false;
  bool after_quote = false;
  bool record_open = false;
  current.line = 1;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    after_quote = false;
  };
  auto end_record = [&] {
    if (record_open) {
      end_field();
      records.push_back(std::move(current));
    }
    current = {};
    record_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') continue;
    if (ch == '\n' || ch == '\r') {
      end_record();
      ++line;
      current.line = line;
      continue;
    }
    if (!record_open) {
      record_open = true;
      current.line = line;
    }
    if (ch == ',') {
      end_field();
    } else if (after_quote) {
      throw ParseError("CSV line " + std::to_string(line) + ": text after closing quote");
    } else if (ch == '"' && field.empty()) {
      in_quotes = true;
    } else {
      field += ch;
    }
  }
  if (in_quotes) {
    throw ParseError("CSV line " + std::to_string(current.line) + ": unterminated quoted field");
  }
  end_record();
  return records;
}

std::string CsvLine(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char ch : f) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  }
  out += '\n';
  return out;
}

}  // namespace mtpp
