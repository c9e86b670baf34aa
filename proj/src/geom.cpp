#include "dispersion/geom.hpp"

#include <algorithm>
#include <cmath>

#include "dispersion/error.hpp"

namespace dispersion {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidGeometry, std::string("non-finite ") + what);
}

void require_positive(double v, const char* what) {
  require_finite(v, what);
  if (v <= 0.0) throw Error(ErrorKind::InvalidGeometry, std::string(what) + " must be positive");
}

}  // namespace

void validate(const Point& pt) {
  require_finite(pt.x, "x");
  require_finite(pt.y, "y");
  if (pt.weight) require_positive(*pt.weight, "weight");
}

void validate(const Segment& seg) {
  validate(seg.p);
  validate(seg.q);
}

void validate(const CircleSpec& circle) {
  validate(circle.center);
  require_positive(circle.radius, "radius");
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

SegmentFrame::SegmentFrame(const Segment& seg) : origin_(seg.p.x, seg.p.y) {
  validate(seg);
  double dx = seg.q.x - seg.p.x;
  double dy = seg.q.y - seg.p.y;
  length_ = std::hypot(dx, dy);
  if (length_ > 0.0) {
    ux_ = dx / length_;
    uy_ = dy / length_;
  }
}

Point SegmentFrame::to_local(const Point& pt) const {
  double dx = pt.x - origin_.x;
  double dy = pt.y - origin_.y;
  Point out = pt;
  out.x = dx * ux_ + dy * uy_;
  out.y = ux_ * dy - uy_ * dx;
  return out;
}

Point SegmentFrame::to_world(double offset) const {
  return Point(origin_.x + offset * ux_, origin_.y + offset * uy_);
}

std::optional<OpenInterval> forbidden_interval_disk(const Point& pt, double lambda) {
  validate(pt);
  require_positive(lambda, "lambda");
  double ay = std::abs(pt.y);
  if (ay >= lambda) return std::nullopt;
  double h = std::sqrt((lambda - ay) * (lambda + ay));
  return OpenInterval{pt.x - h, pt.x + h};
}

std::optional<OpenInterval> forbidden_interval_square(const Point& pt, double size) {
  validate(pt);
  require_positive(size, "size");
  double half = 0.5 * size;
  if (std::abs(pt.y) >= half) return std::nullopt;
  return OpenInterval{pt.x - half, pt.x + half};
}

std::optional<Arc> forbidden_arc(const Point& pt, const CircleSpec& circle, double lambda) {
  validate(pt);
  validate(circle);
  require_positive(lambda, "lambda");
  const double r = circle.radius;
  const double d = distance(pt, circle.center);
  if (d == 0.0) {
    if (lambda > r) return Arc{0.0, kPi, true};
    return std::nullopt;
  }
  if (lambda > d + r) return Arc{0.0, kPi, true};
  if (lambda <= std::abs(d - r)) return std::nullopt;
  double c = (r * r + d * d - lambda * lambda) / (2.0 * r * d);
  c = std::clamp(c, -1.0, 1.0);
  double mid = normalize_angle(std::atan2(pt.y - circle.center.y, pt.x - circle.center.x));
  return Arc{mid, std::acos(c), false};
}

FeasibleSet feasible_set(ClosedInterval host, std::span<const OpenInterval> forbidden) {
  std::vector<OpenInterval> sorted;
  sorted.reserve(forbidden.size());
  for (const auto& f : forbidden)
    if (f.lo < f.hi) sorted.push_back(f);
  std::sort(sorted.begin(), sorted.end(),
            [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });

  // Open sets that merely touch leave the shared endpoint feasible.
  std::vector<OpenInterval> merged;
  for (const auto& f : sorted) {
    if (!merged.empty() && f.lo < merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, f.hi);
    } else {
      merged.push_back(f);
    }
  }

  FeasibleSet out;
  double cursor = host.lo;
  for (const auto& m : merged) {
    if (m.hi <= host.lo) continue;
    if (m.lo >= host.hi) break;
    if (m.lo >= cursor) out.push_back({cursor, m.lo});
    cursor = std::max(cursor, m.hi);
  }
  if (cursor <= host.hi) out.push_back({cursor, host.hi});
  return out;
}

RingCover merge_ring_arcs(std::vector<OpenInterval> arcs, double circumference) {
  RingCover cover;
  std::vector<OpenInterval> items;
  for (auto a : arcs) {
    if (!(a.lo < a.hi)) continue;
    double w = a.hi - a.lo;
    if (w > circumference) {
      cover.full = true;
      return cover;
    }
    double lo = std::fmod(a.lo, circumference);
    if (lo < 0.0) lo += circumference;
    if (lo >= circumference) lo = 0.0;
    items.push_back({lo, lo + w});
  }
  std::sort(items.begin(), items.end(),
            [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
  std::vector<OpenInterval> merged;
  for (const auto& a : items) {
    if (!merged.empty() && a.lo < merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, a.hi);
    } else {
      merged.push_back(a);
    }
  }
  // The last arc may wrap past C onto the first ones.
  while (merged.size() > 1 && merged.back().hi > merged.front().lo + circumference) {
    merged.back().hi = std::max(merged.back().hi, merged.front().hi + circumference);
    merged.erase(merged.begin());
  }
  if (merged.size() == 1 && merged.front().hi - merged.front().lo > circumference) {
    cover.full = true;
    return cover;
  }
  cover.arcs = std::move(merged);
  return cover;
}

FeasibleSet feasible_set(std::span<const Arc> forbidden) {
  std::vector<OpenInterval> arcs;
  for (const auto& a : forbidden) {
    if (a.full) return {};
    arcs.push_back({a.mid - a.half_width, a.mid + a.half_width});
  }
  RingCover cover = merge_ring_arcs(std::move(arcs), kTwoPi);
  if (cover.full) return {};
  if (cover.arcs.empty()) return {{0.0, kTwoPi}};

  // Gaps between consecutive arcs, unrolled, then folded into [0, 2π).
  std::vector<ClosedInterval> gaps;
  const auto& m = cover.arcs;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double lo = m[i].hi;
    double hi = (i + 1 < m.size()) ? m[i + 1].lo : m.front().lo + kTwoPi;
    gaps.push_back({lo, hi});
  }
  FeasibleSet out;
  for (auto g : gaps) {
    double shift = std::floor(g.lo / kTwoPi) * kTwoPi;
    g.lo -= shift;
    g.hi -= shift;
    if (g.hi <= kTwoPi) {
      out.push_back(g);
    } else {
      out.push_back({g.lo, kTwoPi});
      out.push_back({0.0, g.hi - kTwoPi});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
  return out;
}

std::vector<OpenInterval> shrink(std::span<const OpenInterval> intervals, double eps) {
  std::vector<OpenInterval> out;
  out.reserve(intervals.size());
  for (const auto& f : intervals) {
    OpenInterval s{f.lo + eps, f.hi - eps};
    if (s.lo < s.hi) out.push_back(s);
  }
  return out;
}

}  // namespace dispersion
