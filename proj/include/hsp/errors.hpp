#pragma once

#include <stdexcept>
#include <string>

namespace hsp {

/// Input data violates a structural requirement (negative weight, self-loop,
/// unknown node, wrong set size).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter is outside its admissible range.
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (e.g. swapping a non-member out).
class LogicError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exhaustive enumeration would exceed the configured subset limit.
class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance or config text. Carries the 1-based line when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0, const std::string& source = "")
      : std::runtime_error(compose(what, line, source)), detail_(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Same error, attributed to a file.
  ParseError in_source(const std::string& source) const { return ParseError(detail_, line_, source); }

 private:
  static std::string compose(const std::string& what, std::size_t line, const std::string& source) {
    std::string prefix = source;
    if (line != 0) prefix += (prefix.empty() ? "line " : ":") + std::to_string(line);
    return prefix.empty() ? what : prefix + ": " + what;
  }

  std::string detail_;
  std::size_t line_;
};

}  // namespace hsp
