#include "elmine/patterns.hpp"

#include <cctype>

#include "elmine/errors.hpp"

namespace elmine {

namespace {

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (lower(a[i]) != lower(b[i]))
      return false;
  return true;
}

std::string lowered(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    c = lower(c);
  return out;
}

// Iterative '*'/'?' wildcard match; inputs already lowercased.
bool glob_match(std::string_view pat, std::string_view str) {
  std::size_t p = 0, s = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (s < str.size()) {
    if (p < pat.size() && (pat[p] == '?' || pat[p] == str[s])) {
      ++p;
      ++s;
    } else if (p < pat.size() && pat[p] == '*') {
      star = p++;
      mark = s;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      s = ++mark;
    } else {
      return false;
    }
  }
  while (p < pat.size() && pat[p] == '*')
    ++p;
  return p == pat.size();
}

} // namespace

std::optional<std::uint32_t> parse_ipv4(std::string_view text) {
  std::uint32_t ip = 0;
  int octets = 0;
  std::size_t i = 0;
  while (octets < 4) {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      return std::nullopt;
    unsigned value = 0;
    std::size_t digits = 0;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + static_cast<unsigned>(text[i] - '0');
      if (++digits > 3 || value > 255)
        return std::nullopt;
      ++i;
    }
    ip = (ip << 8) | value;
    ++octets;
    if (octets < 4) {
      if (i >= text.size() || text[i] != '.')
        return std::nullopt;
      ++i;
    }
  }
  if (i != text.size())
    return std::nullopt;
  return ip;
}

HostPattern HostPattern::parse(std::string_view text) {
  HostPattern p;
  p.text_ = std::string(text);
  if (text.empty())
    throw ConfigError("empty host pattern");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    auto net = parse_ipv4(text.substr(0, slash));
    if (!net)
      throw ConfigError("bad CIDR network in '" + p.text_ + "'");
    int bits = 0;
    auto tail = text.substr(slash + 1);
    if (tail.empty() || tail.size() > 2)
      throw ConfigError("bad CIDR prefix length in '" + p.text_ + "'");
    for (char c : tail) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ConfigError("bad CIDR prefix length in '" + p.text_ + "'");
      bits = bits * 10 + (c - '0');
    }
    if (bits < 0 || bits > 32)
      throw ConfigError("CIDR prefix length out of range in '" + p.text_ +
                        "'");
    p.is_cidr_ = true;
    p.network_ = *net;
    p.prefix_bits_ = bits;
  }
  return p;
}

bool HostPattern::matches(std::string_view host) const {
  if (!is_cidr_)
    return iequals(text_, host);
  auto ip = parse_ipv4(host);
  if (!ip)
    return false;
  if (prefix_bits_ == 0)
    return true;
  const std::uint32_t mask = ~std::uint32_t{0} << (32 - prefix_bits_);
  return (*ip & mask) == (network_ & mask);
}

PathPattern PathPattern::parse(std::string_view text) {
  if (text.empty())
    throw ConfigError("empty path pattern");
  PathPattern p;
  p.text_ = lowered(text);
  p.is_glob_ = p.text_.find_first_of("*?") != std::string::npos;
  return p;
}

bool PathPattern::matches(std::string_view path) const {
  std::string low = lowered(path);
  if (is_glob_)
    return glob_match(text_, low);
  return low.find(text_) != std::string::npos;
}

HostMatcher HostMatcher::from(const std::vector<std::string> &patterns) {
  HostMatcher m;
  m.patterns_.reserve(patterns.size());
  for (const auto &p : patterns)
    m.patterns_.push_back(HostPattern::parse(p));
  return m;
}

bool HostMatcher::matches(std::string_view host) const {
  for (const auto &p : patterns_)
    if (p.matches(host))
      return true;
  return false;
}

std::vector<std::string> HostMatcher::texts() const {
  std::vector<std::string> out;
  out.reserve(patterns_.size());
  for (const auto &p : patterns_)
    out.push_back(p.text());
  return out;
}

PathMatcher PathMatcher::from(const std::vector<std::string> &patterns) {
  PathMatcher m;
  m.patterns_.reserve(patterns.size());
  for (const auto &p : patterns)
    m.patterns_.push_back(PathPattern::parse(p));
  return m;
}

bool PathMatcher::matches(std::string_view path) const {
  for (const auto &p : patterns_)
    if (p.matches(path))
      return true;
  return false;
}

std::vector<std::string> PathMatcher::texts() const {
  std::vector<std::string> out;
  out.reserve(patterns_.size());
  for (const auto &p : patterns_)
    out.push_back(p.text());
  return out;
}

} // namespace elmine
