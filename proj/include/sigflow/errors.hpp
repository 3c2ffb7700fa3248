#pragma once

#include <stdexcept>
#include <string>

namespace sigflow {

// Malformed text input. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Orientation that does not respect the sign rule.
class ConsistencyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unknown vertex/edge, or a caller-side precondition that is cheap to check.
class ArgumentError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A stated precondition of an operation was violated by its input values.
class ContractViolation : public std::logic_error {
  using std::logic_error::logic_error;
};

// An internal guarantee failed: a bug, or an input outside the supported hypotheses.
class InvariantViolation : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace sigflow
