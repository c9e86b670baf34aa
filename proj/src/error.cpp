#include "dispersion/error.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>

namespace dispersion {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::InvalidSize: return "InvalidSize";
    case ErrorKind::IndexError: return "IndexError";
    case ErrorKind::VersionError: return "VersionError";
    case ErrorKind::NoFeasibleCandidate: return "NoFeasibleCandidate";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::NoFeasiblePath: return "NoFeasiblePath";
    case ErrorKind::ModelInvariantViolation: return "ModelInvariantViolation";
    case ErrorKind::InvalidEdge: return "InvalidEdge";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InconsistentSolution: return "InconsistentSolution";
  }
  return "Unknown";
}

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("DISPERSION_EPS")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v >= 0.0) return v;
  }
  return 1e-9;
}

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> slot{initial_tolerance()};
  return slot;
}

}  // namespace

double tolerance() { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tolerance(double eps) { tolerance_slot().store(eps, std::memory_order_relaxed); }

}  // namespace dispersion
