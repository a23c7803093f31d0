#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compact_ilp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }
  std::size_t line_;
  std::size_t column_;
};

/// Structurally valid input that violates a documented invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Operation called in the wrong state or with an incompatible argument.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration, node, or time budget was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A structure was asked to hold more elements than it was built for.
class CapacityError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// An argument lies outside the domain of the operation.
class DomainError : public UsageError {
 public:
  using UsageError::UsageError;
};

}  // namespace compact_ilp
