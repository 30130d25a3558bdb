#pragma once

#include <stdexcept>
#include <string>

namespace tap {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (instance/solution/source files).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ParseError(const std::string& message) : Error(message), line_(0) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Semantically invalid instance, solution, or reduction source.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A solver or transform was called outside its supported class.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace tap
