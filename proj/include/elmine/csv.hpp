#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace elmine::csv {

// Minimal CSV support for the file formats this toolkit emits. Fields are
// written unquoted; none of our values contain commas or newlines.

std::vector<std::string> split(std::string_view line);

std::string join(const std::vector<std::string> &fields);

// Shortest decimal form that round-trips a double (printf %.17g trimmed by
// trying %.15g and %.16g first).
std::string format_double(double value);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Reads a whole CSV file. First line becomes the header. Throws IoFailure if
// the file cannot be opened.
Table read_file(const std::string &path);

// Writes header then rows. Throws IoFailure on open or write failure.
void write_file(const std::string &path, const Table &table);

} // namespace elmine::csv
