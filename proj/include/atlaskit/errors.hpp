#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atlaskit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-side precondition was violated (bad index, wrong pair, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A structure that should satisfy some axioms does not.
class InvalidStructure : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed a configured size bound.
class SizeBoundError : public Error {
 public:
  using Error::Error;
};

/// Operation is not available for this representation.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Evaluation of an expression hit a partial operation outside its domain.
class EvalError : public Error {
 public:
  EvalError(std::string message, std::string subexpr)
      : Error(message + ": " + subexpr), subexpr_(std::move(subexpr)) {}

  const std::string& subexpression() const noexcept { return subexpr_; }

 private:
  std::string subexpr_;
};

/// Parse failure. what() is formatted as `line:<l>:col:<c>: <message>`.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line:" + std::to_string(line) + ":col:" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A well-formed file refers to something that is not declared.
class ResolutionError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

}  // namespace atlaskit
