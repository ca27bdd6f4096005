#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace elmine {

// Base for all toolkit errors. `kind()` is the stable machine-readable name
// that the CLI prints on stderr and maps to an exit code.
class Error : public std::runtime_error {
public:
  Error(std::string kind, std::string what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)),
        message_(std::move(what)) {}

  const std::string &kind() const noexcept { return kind_; }
  // The message without the kind prefix.
  const std::string &message() const noexcept { return message_; }

private:
  std::string kind_;
  std::string message_;
};

#define ELMINE_DEFINE_ERROR(Name)                                             \
  struct Name : Error {                                                       \
    explicit Name(const std::string &what) : Error(#Name, what) {}            \
  }

ELMINE_DEFINE_ERROR(MalformedLine);
ELMINE_DEFINE_ERROR(IoFailure);
ELMINE_DEFINE_ERROR(InvalidShape);
ELMINE_DEFINE_ERROR(ShapeMismatch);
ELMINE_DEFINE_ERROR(DegenerateCluster);
ELMINE_DEFINE_ERROR(InvalidRule);
ELMINE_DEFINE_ERROR(InvalidSpec);
ELMINE_DEFINE_ERROR(ConfigError);
ELMINE_DEFINE_ERROR(KeyMismatch);

#undef ELMINE_DEFINE_ERROR

// Exit-code classification used by the CLI: usage/config problems exit 1,
// data problems exit 2.
inline bool is_usage_error(const Error &e) {
  return e.kind() == "ConfigError" || e.kind() == "InvalidRule" ||
         e.kind() == "InvalidSpec";
}

} // namespace elmine
