#pragma once

#include <stdexcept>
#include <string>

namespace sbo {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a documented precondition (dimension mismatch, bad bounds).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A configuration is rejected before any iteration runs. The message names
/// the violated condition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An iterate left the finite range.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Iterative routine ran out of budget. Carries the best estimate reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace sbo
