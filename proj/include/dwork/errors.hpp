#pragma once

#include <stdexcept>
#include <string>

namespace dwork {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed config, out-of-range index, grading precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

class ContextMismatch : public InputError {
 public:
  ContextMismatch() : InputError("operands belong to different variable contexts") {}
};

class GradingError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, int line, int column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// A standing mathematical hypothesis (smoothness, independence of the u-classes) fails.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

class SmoothnessError : public AssumptionError {
 public:
  using AssumptionError::AssumptionError;
};

class IndependenceError : public AssumptionError {
 public:
  using AssumptionError::AssumptionError;
};

/// Something that must hold by construction did not.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dwork
