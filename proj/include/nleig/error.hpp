#pragma once

#include <stdexcept>
#include <string>

namespace nleig {

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Result magnitude cannot be represented in binary64.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// The right-hand side left the range where double precision carries any
/// information (reciprocal-gamma problems at large index).
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative method did not converge within its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A root or eigenvalue bracket could not be established.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive step size fell below the configured minimum.
class StepUnderflow : public std::runtime_error {
 public:
  StepUnderflow(const std::string& what, double where)
      : std::runtime_error(what), location(where) {}
  double location;
};

/// Invalid user configuration (CLI / config file); maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nleig
