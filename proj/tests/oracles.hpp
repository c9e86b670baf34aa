#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dispersion/geom.hpp"
#include "dispersion/mofl_solver.hpp"

namespace oracle {

using dispersion::CircleSpec;
using dispersion::Point;
using dispersion::Segment;

struct OracleBudget {
  int maxN = 12;
  int maxK = 64;
  std::int64_t maxNodes = 2'000'000;
};

/// Exhaustive maximum number of disk centers on the segment at clearance
/// lambda and spacing lambda / alpha.
std::int64_t brute_count_line(std::span<const Point> points, const Segment& segment, double lambda,
                              double alpha, const OracleBudget& budget = {});

/// Same search for axis-aligned squares of side `size` (spacing = size).
std::int64_t brute_count_squares(std::span<const Point> points, const Segment& segment, double size,
                                 const OracleBudget& budget = {});

/// Rotation baseline on the circle boundary.
std::int64_t brute_count_circle(std::span<const Point> points, const CircleSpec& circle, double lambda,
                                double alpha, int starts = 64, const OracleBudget& budget = {});

/// Largest lambda with count(lambda) >= k, by bisection on a monotone count.
/// `hi` must be infeasible. Returns 0 when nothing in (0, hi) is feasible.
template <class Count>
double bisect_optimum(Count&& count, int k, double hi) {
  double lo = hi;
  for (int i = 0; i < 200 && count(lo) < k; ++i) lo *= 0.5;
  if (count(lo) < k) return 0.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count(mid) >= k) lo = mid; else hi = mid;
  }
  return lo;
}

/// Best count over a dense grid of first-center positions followed by
/// leftmost greedy; a lower bound used to sanity check the line oracle.
std::int64_t grid_count_line(std::span<const Point> points, const Segment& segment, double lambda,
                             double alpha, double resolution);

struct MoflBrute {
  double covered_weight = 0.0;
  std::vector<double> centers;
};

/// Enumerates every k-subset of the instance's candidate positions that
/// respects the separation and measures coverage with d < lambda.
MoflBrute brute_mofl(const dispersion::MoflInstance& inst, int k, const OracleBudget& budget = {});

/// Covered weight of a set of centers (offsets along pq), measured geometrically.
double covered_weight(const dispersion::MoflInstance& inst, std::span<const double> centers);

}  // namespace oracle
