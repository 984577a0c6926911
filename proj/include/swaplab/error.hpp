#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swaplab {

/// Malformed input: bad arguments, violated preconditions, inconsistent sizes.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solution that is not feasible for its instance (wrong cardinality, empty,
/// indices outside the candidate set).
class Infeasible : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Text input that does not follow its format. `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An enumeration would exceed its configured node budget.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swaplab
