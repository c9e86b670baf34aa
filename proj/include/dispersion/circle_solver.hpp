#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dispersion/geom.hpp"
#include "dispersion/matrix_search.hpp"

namespace dispersion {

struct CircInstance {
  std::vector<Point> points;
  CircleSpec circle;
  int k = 1;
  double alpha = 1.0;
};

/// Centers on the circle boundary, as angles in [0, 2π) and as points.
struct CirclePlacement {
  std::vector<double> angles;
  std::vector<Point> centers;
  double lambda = 0.0;
};

struct CircleSolution {
  double lambda = 0.0;
  CirclePlacement placement;
  MatrixSearchStats stats;
};

/// Forbidden arcs on a ring of circumference `circumference`, stepped by
/// `step`. Arcs are merged, unrolled (lo in [0, C)), sorted and each shorter
/// than `step`. Residues are taken relative to `origin`.
struct RingModel {
  double circumference = kTwoPi;
  double step = 0.0;
  double origin = 0.0;
  std::vector<OpenInterval> arcs;

  std::size_t size() const { return arcs.size(); }
  /// Endpoints in the doubled index space 0 .. 2n-1 (index n + i is arc i one lap later).
  double left(std::size_t x) const;
  double right(std::size_t x) const;
};

/// N[x][j]: arc reached after 2^j jumps from the right end of arc x;
/// C[x][j]: centers placed on the way, counting the start but not the arc reached.
struct JumpTables {
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t arcs = 0;    // n; index space has 2n entries
  std::size_t levels = 0;
  std::vector<std::vector<std::size_t>> N;
  std::vector<std::vector<std::int64_t>> C;
};

/// Builds the first level with a versioned tree over residues and lifts it.
/// With cap > 0 only enough levels for `cap` centers are built.
JumpTables build_jump_tables(const RingModel& model, std::int64_t cap = 0);

/// Centers placed greedily once around the ring when anchored at the right
/// end of arc `start` (0 <= start < n). With cap > 0 the result may be
/// truncated to any value >= cap.
std::int64_t cal(std::size_t start, const JumpTables& tables, const RingModel& model, std::int64_t cap = 0);

/// Angular step equivalent to chord spacing `delta` on a circle of radius r.
double circle_step(double delta, double radius);

enum class CircleRoute { Diameter, Blocked, Empty, LongGap, Jump };

struct CircleCount {
  std::int64_t count = 0;
  CircleRoute route = CircleRoute::Empty;
  double anchor = 0.0;  // best starting angle (unrolled)
};

/// Ring model at radius lambda with the tolerance applied. `full` is set
/// when the whole boundary is forbidden.
struct CircleModel {
  bool full = false;
  bool diameter = false;  // spacing exceeds the diameter
  RingModel ring;
};
CircleModel circle_model(std::span<const Point> points, const CircleSpec& circle, double lambda, double alpha);

CircleCount count_circle_detail(std::span<const Point> points, const CircleSpec& circle, double lambda,
                                double alpha, std::int64_t cap = 0);

std::int64_t count_circle(std::span<const Point> points, const CircleSpec& circle, double lambda,
                          double alpha);

/// Greedy placement angles once around the ring from the best anchor, at most `limit` of them.
std::vector<double> circle_greedy(std::span<const Point> points, const CircleSpec& circle, double lambda,
                                  double alpha, std::size_t limit);

CircleSolution solve_circle(std::span<const Point> points, const CircleSpec& circle, int k, double alpha);

inline CircleSolution solve_circle(const CircInstance& inst) {
  return solve_circle(inst.points, inst.circle, inst.k, inst.alpha);
}

}  // namespace dispersion
