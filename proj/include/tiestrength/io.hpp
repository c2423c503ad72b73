#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tiestrength/model.hpp"

namespace tie {

class LoadError : public Error {
 public:
  using Error::Error;
};

using CsvRow = std::vector<std::string>;

// Minimal RFC 4180 reader: comma separated, double-quote quoting with "" as
// an escaped quote, LF or CRLF line endings. A trailing empty line is ignored.
std::vector<CsvRow> parse_csv(std::string_view text);
std::vector<CsvRow> read_csv(const std::string& path);

// Quotes a field only when it contains a comma, quote or line break.
std::string csv_field(std::string_view field);
std::string csv_line(const CsvRow& fields);

// Shortest representation that round-trips to the same double.
std::string format_double(double value);
// Strict: the whole string must be a finite decimal number.
bool parse_double(std::string_view text, double& out);

std::string read_file(const std::string& path);
// Writes bytes verbatim (no newline translation).
void write_file(const std::string& path, std::string_view contents);
bool file_exists(const std::string& path);

}  // namespace tie
