#include "elmine/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "elmine/errors.hpp"

namespace elmine::csv {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string join(const std::vector<std::string> &fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i)
      out += ',';
    out += fields[i];
  }
  return out;
}

std::string format_double(double value) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value)
      break;
  }
  return buf;
}

Table read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoFailure("cannot open csv file: " + path);
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (first) {
      table.header = split(line);
      first = false;
    } else {
      table.rows.push_back(split(line));
    }
  }
  return table;
}

void write_file(const std::string &path, const Table &table) {
  std::ofstream out(path);
  if (!out)
    throw IoFailure("cannot open csv file for writing: " + path);
  out << join(table.header) << '\n';
  for (const auto &row : table.rows)
    out << join(row) << '\n';
  if (!out)
    throw IoFailure("write failure on csv file: " + path);
}

} // namespace elmine::csv
