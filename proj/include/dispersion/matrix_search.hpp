#pragma once

#include <cstddef>
#include <functional>

namespace dispersion {

/// M implicitly represented arrays; array i has length(i) entries and
/// eval(i, t) is nonincreasing in t.
struct CandidateFamily {
  std::size_t arrays = 0;
  std::function<std::size_t(std::size_t)> length;
  std::function<double(std::size_t, std::size_t)> eval;
};

enum class FeasibleDirection {
  Below,  // test(v) true for every v at or below some threshold
  Above,  // test(v) true for every v at or above some threshold
};

struct FeasibilityPredicate {
  std::function<bool(double)> test;
  FeasibleDirection direction = FeasibleDirection::Below;
};

struct MatrixSearchStats {
  std::size_t predicate_calls = 0;
  std::size_t evaluations = 0;
  std::size_t iterations = 0;
};

/// Extreme feasible entry of the family: the largest feasible value for
/// FeasibleDirection::Below, the smallest for Above. Each predicate call is
/// made on the weighted median of the surviving windows' middle elements and
/// discards at least a quarter of the survivors.
///
/// Throws Error(NoFeasibleCandidate) when no entry passes the test.
double optimal_feasible(const CandidateFamily& family, const FeasibilityPredicate& pred,
                        MatrixSearchStats* stats = nullptr);

}  // namespace dispersion
