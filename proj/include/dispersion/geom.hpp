#pragma once

#include <optional>
#include <span>
#include <vector>

namespace dispersion {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> weight;  // MOFL only; > 0 when present

  Point() = default;
  Point(double x_, double y_) : x(x_), y(y_) {}
  Point(double x_, double y_, double w) : x(x_), y(y_), weight(w) {}

  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point p;
  Point q;
};

struct CircleSpec {
  Point center;
  double radius = 1.0;
};

/// Open set (lo, hi).
struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo < v && v < hi; }
  double length() const { return hi - lo; }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Closed set [lo, hi]; lo == hi is a single feasible point.
struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  friend bool operator==(const ClosedInterval&, const ClosedInterval&) = default;
};

/// Open arc of boundary angles within `half_width` of `mid`, or the whole circle.
struct Arc {
  double mid = 0.0;         // [0, 2π)
  double half_width = 0.0;  // [0, π]
  bool full = false;
};

using FeasibleSet = std::vector<ClosedInterval>;

/// Rigid motion taking a segment onto the nonnegative x-axis with p at the
/// origin. Local coordinates of centers are offsets along pq.
class SegmentFrame {
 public:
  explicit SegmentFrame(const Segment& seg);

  double length() const { return length_; }
  Point to_local(const Point& pt) const;
  Point to_world(double offset) const;

 private:
  Point origin_;
  double ux_ = 1.0;
  double uy_ = 0.0;
  double length_ = 0.0;
};

void validate(const Point& pt);
void validate(const Segment& seg);
void validate(const CircleSpec& circle);

double distance(const Point& a, const Point& b);

/// Centers c on the x-axis with d(c, pt) < lambda.
std::optional<OpenInterval> forbidden_interval_disk(const Point& pt, double lambda);

/// Centers c on the x-axis whose axis-aligned square of side `size` has pt in
/// its interior.
std::optional<OpenInterval> forbidden_interval_square(const Point& pt, double size);

/// Boundary angles whose point lies strictly within lambda of pt.
std::optional<Arc> forbidden_arc(const Point& pt, const CircleSpec& circle, double lambda);

/// Closed complement of the union of `forbidden` within `host`.
FeasibleSet feasible_set(ClosedInterval host, std::span<const OpenInterval> forbidden);

/// Closed complement of the union of arcs on [0, 2π), split at angle 0.
FeasibleSet feasible_set(std::span<const Arc> forbidden);

/// Union of open arcs on a ring of circumference `circumference`, kept in
/// unrolled form: lo in [0, C), lo < hi, sorted by lo, cyclically disjoint.
struct RingCover {
  bool full = false;
  std::vector<OpenInterval> arcs;
};

RingCover merge_ring_arcs(std::vector<OpenInterval> arcs, double circumference);

/// Removes eps from both ends of each interval; drops those that vanish.
std::vector<OpenInterval> shrink(std::span<const OpenInterval> intervals, double eps);

double normalize_angle(double a);

}  // namespace dispersion
