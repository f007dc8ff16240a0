#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citgen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violation of a model invariant (bad index, duplicate name, t out of range).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Syntax or reference error in a model file; carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

/// No full test case satisfies the constraints.
class UnsatisfiableError : public Error {
 public:
  using Error::Error;
};

/// Forbidden-tuple closure exceeded its configured size or work cap.
class DerivationCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Cartesian product too large for brute-force verification.
class EnumerationCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace citgen
