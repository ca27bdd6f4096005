#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elmine {

std::optional<std::uint32_t> parse_ipv4(std::string_view text);

// One host rule: a dotted-quad/hostname compared verbatim (case-insensitive),
// or an IPv4 CIDR prefix like "66.249.64.0/19".
class HostPattern {
public:
  static HostPattern parse(std::string_view text); // throws ConfigError
  bool matches(std::string_view host) const;
  const std::string &text() const { return text_; }

private:
  std::string text_;
  bool is_cidr_ = false;
  std::uint32_t network_ = 0;
  int prefix_bits_ = 0;
};

// One path rule: with '*' / '?' it is a glob over the whole path, otherwise a
// substring test. Matching is case-insensitive.
class PathPattern {
public:
  static PathPattern parse(std::string_view text);
  bool matches(std::string_view path) const;
  const std::string &text() const { return text_; }

private:
  std::string text_; // stored lowercased
  bool is_glob_ = false;
};

class HostMatcher {
public:
  HostMatcher() = default;
  static HostMatcher from(const std::vector<std::string> &patterns);
  bool matches(std::string_view host) const;
  bool empty() const { return patterns_.empty(); }
  std::vector<std::string> texts() const;

private:
  std::vector<HostPattern> patterns_;
};

class PathMatcher {
public:
  PathMatcher() = default;
  static PathMatcher from(const std::vector<std::string> &patterns);
  bool matches(std::string_view path) const;
  bool empty() const { return patterns_.empty(); }
  std::vector<std::string> texts() const;

private:
  std::vector<PathPattern> patterns_;
};

} // namespace elmine
