#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jacred {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated (dimension mismatch,
/// index out of range, wrong shape of map, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised by exact division when the divisor does not divide the dividend.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A configured exactness or resource budget was exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Lexical, syntactic or semantic error in the map text format.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace jacred
