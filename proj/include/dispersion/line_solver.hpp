#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dispersion/geom.hpp"
#include "dispersion/matrix_search.hpp"

namespace dispersion {

struct LineInstance {
  std::vector<Point> points;
  Segment segment;
  int k = 1;
  double alpha = 1.0;  // consecutive centers at least lambda / alpha apart
};

/// Centers as offsets along pq (0 at p), sorted.
struct Placement {
  std::vector<double> centers;
  double lambda = 0.0;
};

struct LineSolution {
  double lambda = 0.0;
  Placement placement;
  MatrixSearchStats stats;
};

/// Saturation value for counts on very small radii.
inline constexpr std::int64_t kCountCap = std::int64_t{1} << 50;

enum class EndpointKind { Constant, RightOfForbidden, LeftOfForbidden };
enum class EndpointShape { Disk, Square };

/// Endpoint of a feasible interval as a function of the radius (or square
/// size). Point half-widths are extended continuously by 0 where the point
/// does not yet constrain the segment, so every function is monotone.
struct EndpointFunc {
  EndpointKind kind = EndpointKind::Constant;
  double x = 0.0;
  double y = 0.0;  // |y| of the owning point (local frame)
  EndpointShape shape = EndpointShape::Disk;

  static EndpointFunc constant(double x) { return {EndpointKind::Constant, x, 0.0, EndpointShape::Disk}; }
  static EndpointFunc right_of(const Point& pt, EndpointShape shape = EndpointShape::Disk);
  static EndpointFunc left_of(const Point& pt, EndpointShape shape = EndpointShape::Disk);

  double operator()(double lambda) const;
};

/// Greedy count (leftmost placement) on sorted disjoint closed intervals with
/// consecutive centers at least `spacing` apart. Contributions of intervals
/// that lie within `spacing` of the previous center are clamped at zero.
std::int64_t count_on_feasible(const FeasibleSet& feasible, double spacing);

/// The first `limit` centers of the same greedy.
std::vector<double> greedy_on_feasible(const FeasibleSet& feasible, double spacing, std::size_t limit);

/// Feasible offsets along the segment for disks of radius lambda, with the
/// tolerance applied (forbidden sets shrunk by eps).
FeasibleSet disk_feasible_set(std::span<const Point> points, const Segment& segment, double lambda);
FeasibleSet square_feasible_set(std::span<const Point> points, const Segment& segment, double size);

std::int64_t count_squares(std::span<const Point> points, const Segment& segment, double size);
std::int64_t count_disks(std::span<const Point> points, const Segment& segment, double lambda,
                         double alpha);

/// Largest lambda in (0, lambda_max) with right(lambda) - left(lambda) >= t * lambda / alpha,
/// i.e. the root of the equality. Empty when the root is not strictly inside.
std::optional<double> candidate_root(const EndpointFunc& left, const EndpointFunc& right, int t,
                                     double alpha, double lambda_max);

/// Upper bound on any finite optimum for the line problems.
double line_lambda_max(std::span<const Point> points, const Segment& segment, double alpha);

LineSolution solve_squares(std::span<const Point> points, const Segment& segment, int k);
LineSolution solve_disks(std::span<const Point> points, const Segment& segment, int k, double alpha);

inline LineSolution solve_disks(const LineInstance& inst) {
  return solve_disks(inst.points, inst.segment, inst.k, inst.alpha);
}

}  // namespace dispersion
