#include "elmine/logparse.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>

#include "elmine/errors.hpp"

namespace elmine::logs {

namespace {

constexpr std::array<const char *, 12> kMonths = {
    "JAN", "FEB", "MAR", "APR", "MAY", "JUN",
    "JUL", "AUG", "SEP", "OCT", "NOV", "DEC"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

int two_digits(std::string_view s, std::size_t at) {
  if (!is_digit(s[at]) || !is_digit(s[at + 1]))
    throw MalformedLine("expected digits in timestamp");
  return (s[at] - '0') * 10 + (s[at + 1] - '0');
}

int month_number(std::string_view name) {
  char up[3];
  for (int i = 0; i < 3; ++i)
    up[i] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[i])));
  for (int m = 0; m < 12; ++m)
    if (up[0] == kMonths[m][0] && up[1] == kMonths[m][1] &&
        up[2] == kMonths[m][2])
      return m + 1;
  throw MalformedLine("unknown month name in timestamp");
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t')
      ++i;
    if (i > start)
      tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint64_t parse_uint(std::string_view s, const char *what) {
  if (s.empty())
    throw MalformedLine(std::string("empty ") + what);
  std::uint64_t value = 0;
  for (char c : s) {
    if (!is_digit(c))
      throw MalformedLine(std::string("non-numeric ") + what);
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

} // namespace

Method LogRecord::method_kind() const {
  if (method == "GET")
    return Method::Get;
  if (method == "POST")
    return Method::Post;
  if (method == "HEAD")
    return Method::Head;
  return Method::Other;
}

CivilTime parse_time(std::string_view date_token, std::string_view zone_token) {
  // date_token: "[DD/MON/YYYY:HH:MM:SS", zone_token: "+ZZZZ]"
  if (date_token.size() != 21 || date_token[0] != '[' ||
      date_token[3] != '/' || date_token[7] != '/' || date_token[12] != ':' ||
      date_token[15] != ':' || date_token[18] != ':')
    throw MalformedLine("bad timestamp layout");
  if (zone_token.size() != 6 || zone_token[5] != ']' ||
      (zone_token[0] != '+' && zone_token[0] != '-'))
    throw MalformedLine("bad timezone layout");

  CivilTime t;
  t.day = two_digits(date_token, 1);
  t.month = month_number(date_token.substr(4, 3));
  int year = 0;
  for (std::size_t i = 8; i < 12; ++i) {
    if (!is_digit(date_token[i]))
      throw MalformedLine("bad year in timestamp");
    year = year * 10 + (date_token[i] - '0');
  }
  t.year = year;
  t.hour = two_digits(date_token, 13);
  t.minute = two_digits(date_token, 16);
  t.second = two_digits(date_token, 19);

  int zh = two_digits(zone_token, 1);
  int zm = two_digits(zone_token, 3);
  t.offset_minutes = (zone_token[0] == '-' ? -1 : 1) * (zh * 60 + zm);

  if (t.day < 1 || t.day > 31 || t.hour > 23 || t.minute > 59 ||
      t.second > 59 || zm > 59)
    throw MalformedLine("timestamp field out of range");
  return t;
}

std::string format_time(const CivilTime &t) {
  char buf[32];
  int off = t.offset_minutes;
  char sign = off < 0 ? '-' : '+';
  if (off < 0)
    off = -off;
  std::snprintf(buf, sizeof(buf), "[%02d/%s/%04d:%02d:%02d:%02d %c%02d%02d]",
                t.day, kMonths[t.month - 1], t.year, t.hour, t.minute,
                t.second, sign, off / 60, off % 60);
  return buf;
}

LogRecord parse_line(std::string_view line) {
  auto tokens = split_ws(line);
  if (tokens.size() != 9)
    throw MalformedLine("expected 9 fields, got " +
                        std::to_string(tokens.size()));

  LogRecord rec;
  rec.host = std::string(tokens[0]);
  if (tokens[1] == "-" || tokens[1] == "--")
    rec.user = std::nullopt;
  else
    rec.user = std::string(tokens[1]);
  rec.time = parse_time(tokens[2], tokens[3]);
  rec.method = std::string(tokens[4]);
  rec.path = std::string(tokens[5]);
  rec.protocol = std::string(tokens[6]);

  std::uint64_t status = parse_uint(tokens[7], "status code");
  if (status < 100 || status > 599)
    throw MalformedLine("status code out of range: " + std::to_string(status));
  rec.status = static_cast<int>(status);

  rec.bytes = tokens[8] == "-" ? 0 : parse_uint(tokens[8], "byte count");
  return rec;
}

std::string format_line(const LogRecord &rec) {
  std::string out;
  out.reserve(96);
  out += rec.host;
  out += ' ';
  out += rec.user ? *rec.user : "--";
  out += ' ';
  out += format_time(rec.time);
  out += ' ';
  out += rec.method;
  out += ' ';
  out += rec.path;
  out += ' ';
  out += rec.protocol;
  out += ' ';
  out += std::to_string(rec.status);
  out += ' ';
  out += std::to_string(rec.bytes);
  return out;
}

ParseResult parse_stream(std::istream &in) {
  if (in.bad())
    throw IoFailure("unreadable input stream");
  ParseResult result;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    try {
      result.records.push_back(parse_line(line));
    } catch (const MalformedLine &) {
      ++result.skipped;
    }
  }
  if (in.bad())
    throw IoFailure("read error on input stream");
  return result;
}

ParseResult parse_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw IoFailure("cannot open log file: " + path);
  return parse_stream(in);
}

} // namespace elmine::logs
