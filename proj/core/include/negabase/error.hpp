#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace negabase {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Base mismatches and malformed numeration names.
class NumerationError : public Error {
 public:
  using Error::Error;
};

// A digit outside the alphabet of the numeration system.
class DigitError : public NumerationError {
 public:
  using NumerationError::NumerationError;
};

// A word that violates a canonicity constraint (adjacent 1s in negaFibonacci).
class CanonicityError : public NumerationError {
 public:
  using NumerationError::NumerationError;
};

// Value outside the domain of an operation, e.g. a negative integer in base k.
class DomainError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Operation applied to an automaton with the wrong number of tracks.
class ArityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// The message without the position prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

class CompileError : public Error {
 public:
  using Error::Error;
};

class SessionError : public Error {
 public:
  using Error::Error;
};

}  // namespace negabase
