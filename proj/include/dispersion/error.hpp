#pragma once

#include <stdexcept>
#include <string>

namespace dispersion {

enum class ErrorKind {
  InvalidGeometry,
  InvalidSize,
  IndexError,
  VersionError,
  NoFeasibleCandidate,
  Infeasible,
  Unbounded,
  NoFeasiblePath,
  ModelInvariantViolation,
  InvalidEdge,
  BudgetExceeded,
  SchemaError,
  InconsistentSolution,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Absolute comparison tolerance. Defaults to 1e-9; the DISPERSION_EPS
/// environment variable overrides it (read once).
double tolerance();

/// Overrides the tolerance for the rest of the process (tests, CLI).
void set_tolerance(double eps);

}  // namespace dispersion
