#pragma once

#include <stdexcept>
#include <string>

namespace nilsson {

// Violated precondition or malformed input. The CLI maps this to exit code 1.
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in an input document, with a 1-based position.
class ParseError : public UserError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : UserError(what + " (line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Numerical failure: ill-conditioned fit, non-convergent quadrature or
// iteration. The CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structured "this regime is not supported" failure from the recurrence
// solver (repeated roots, ramification). Reported as a user error.
class UnsupportedError : public UserError {
 public:
  using UserError::UserError;
};

}  // namespace nilsson
