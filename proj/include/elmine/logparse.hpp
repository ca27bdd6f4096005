#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elmine/civil.hpp"

namespace elmine::logs {

enum class Method { Get, Post, Head, Other };

// One access-log line in the nine-field common log format used by the
// course web servers:
//
//   host user [DD/MON/YYYY:HH:MM:SS +ZZZZ] METHOD path protocol status bytes
//
// `method` keeps the request token verbatim so unusual verbs survive a
// parse/format round trip.
struct LogRecord {
  std::string host;
  std::optional<std::string> user; // absent when logged as "-" or "--"
  CivilTime time;
  std::string method = "GET";
  std::string path;
  std::string protocol = "HTTP/1.1";
  int status = 200;
  std::uint64_t bytes = 0; // 0 when logged as "-"

  Method method_kind() const;

  bool operator==(const LogRecord &) const = default;
};

// Throws MalformedLine on wrong field count, unparseable timestamp,
// out-of-range status, or non-numeric byte count.
LogRecord parse_line(std::string_view line);

std::string format_line(const LogRecord &rec);

// "[09/AUG/2001:20:52:07 -0300]" <-> CivilTime. Month names are matched
// case-insensitively; format_time emits them uppercase.
CivilTime parse_time(std::string_view date_token, std::string_view zone_token);
std::string format_time(const CivilTime &t);

struct ParseResult {
  std::vector<LogRecord> records;
  std::size_t skipped = 0; // malformed lines, counted never dropped silently
};

ParseResult parse_stream(std::istream &in);
ParseResult parse_file(const std::string &path); // throws IoFailure

} // namespace elmine::logs
