#include "dispersion/line_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dispersion/error.hpp"

namespace dispersion {

namespace {

std::vector<Point> to_local(std::span<const Point> points, const SegmentFrame& frame) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(frame.to_local(p));
  return out;
}

double effective_spacing(double spacing) {
  return std::max(spacing - tolerance(), 0.5 * spacing);
}

void require_k(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidGeometry, "k must be at least 1");
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::InvalidGeometry, "alpha must be positive");
}

/// One sorted candidate array: roots for t = t_first .. t_first + length - 1.
struct PairArray {
  EndpointFunc left;
  EndpointFunc right;
  int t_first = 0;
  int length = 0;
};

/// Candidate arrays over the given (left, right) endpoint pairs, t in [0, t_count).
std::vector<PairArray> build_pair_arrays(const std::vector<std::pair<EndpointFunc, EndpointFunc>>& pairs,
                                         int t_count, double alpha, double lambda_max) {
  std::vector<PairArray> arrays;
  for (const auto& [left, right] : pairs) {
    const double g0 = right(0.0) - left(0.0);
    if (g0 < 0.0) continue;
    if (g0 == 0.0) {
      if (candidate_root(left, right, 0, alpha, lambda_max)) arrays.push_back({left, right, 0, 1});
      continue;
    }
    // g_t(lambda_max) is decreasing in t; find the first t whose root lies below lambda_max.
    auto below_max = [&](int t) {
      return right(lambda_max) - left(lambda_max) - t * lambda_max / alpha < 0.0;
    };
    int lo = 0, hi = t_count;
    while (lo < hi) {
      int mid = lo + (hi - lo) / 2;
      if (below_max(mid)) hi = mid; else lo = mid + 1;
    }
    if (lo < t_count) arrays.push_back({left, right, lo, t_count - lo});
  }
  return arrays;
}

struct ArraySearch {
  double value;
  MatrixSearchStats stats;
};

ArraySearch search_arrays(const std::vector<PairArray>& arrays, std::vector<double> extra,
                          double alpha, double lambda_max, const std::function<bool(double)>& feasible) {
  CandidateFamily family;
  family.arrays = arrays.size() + (extra.empty() ? 0 : 1);
  std::sort(extra.begin(), extra.end(), std::greater<>());
  family.length = [&](std::size_t i) -> std::size_t {
    if (i < arrays.size()) return static_cast<std::size_t>(arrays[i].length);
    return extra.size();
  };
  family.eval = [&](std::size_t i, std::size_t t) -> double {
    if (i >= arrays.size()) return extra[t];
    const PairArray& a = arrays[i];
    auto root = candidate_root(a.left, a.right, a.t_first + static_cast<int>(t), alpha, lambda_max);
    // Valid by construction; a missing root can only come from rounding at the
    // window edge, where 0 is a harmless (infeasible-free) stand-in.
    return root.value_or(0.0);
  };
  FeasibilityPredicate pred{[&](double v) { return v > 0.0 && feasible(v); }, FeasibleDirection::Below};
  ArraySearch out{};
  try {
    out.value = optimal_feasible(family, pred, &out.stats);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NoFeasibleCandidate)
      throw Error(ErrorKind::Infeasible, "no positive radius admits the requested number of centers");
    throw;
  }
  return out;
}

/// Greedy witness; prefers the exact spacing when it still fits k centers.
std::vector<double> witness(const FeasibleSet& feasible, double spacing, int k) {
  auto exact = greedy_on_feasible(feasible, spacing, static_cast<std::size_t>(k));
  if (static_cast<int>(exact.size()) == k) return exact;
  return greedy_on_feasible(feasible, effective_spacing(spacing), static_cast<std::size_t>(k));
}

}  // namespace

EndpointFunc EndpointFunc::right_of(const Point& pt, EndpointShape shape) {
  return {EndpointKind::RightOfForbidden, pt.x, std::abs(pt.y), shape};
}

EndpointFunc EndpointFunc::left_of(const Point& pt, EndpointShape shape) {
  return {EndpointKind::LeftOfForbidden, pt.x, std::abs(pt.y), shape};
}

double EndpointFunc::operator()(double lambda) const {
  if (kind == EndpointKind::Constant) return x;
  double h;
  if (shape == EndpointShape::Square) {
    h = 0.5 * lambda;
  } else {
    h = lambda > y ? std::sqrt((lambda - y) * (lambda + y)) : 0.0;
  }
  return kind == EndpointKind::RightOfForbidden ? x + h : x - h;
}

std::int64_t count_on_feasible(const FeasibleSet& feasible, double spacing) {
  const double cap = static_cast<double>(kCountCap);
  double total = 0.0;
  double last = -std::numeric_limits<double>::infinity();
  for (const auto& iv : feasible) {
    double start = std::max(iv.lo, last + spacing);
    if (start > iv.hi) continue;
    double extra = std::floor((iv.hi - start) / spacing);
    if (extra >= cap) return kCountCap;
    total += extra + 1.0;
    if (total >= cap) return kCountCap;
    last = start + extra * spacing;
  }
  return static_cast<std::int64_t>(total);
}

std::vector<double> greedy_on_feasible(const FeasibleSet& feasible, double spacing, std::size_t limit) {
  std::vector<double> centers;
  double last = -std::numeric_limits<double>::infinity();
  for (const auto& iv : feasible) {
    double pos = std::max(iv.lo, last + spacing);
    while (pos <= iv.hi && centers.size() < limit) {
      centers.push_back(pos);
      last = pos;
      pos += spacing;
    }
    if (centers.size() >= limit) break;
  }
  return centers;
}

FeasibleSet disk_feasible_set(std::span<const Point> points, const Segment& segment, double lambda) {
  SegmentFrame frame(segment);
  std::vector<OpenInterval> forbidden;
  forbidden.reserve(points.size());
  for (const auto& p : points) {
    if (auto f = forbidden_interval_disk(frame.to_local(p), lambda)) forbidden.push_back(*f);
  }
  auto shrunk = shrink(forbidden, tolerance());
  return feasible_set({0.0, frame.length()}, shrunk);
}

FeasibleSet square_feasible_set(std::span<const Point> points, const Segment& segment, double size) {
  SegmentFrame frame(segment);
  std::vector<OpenInterval> forbidden;
  forbidden.reserve(points.size());
  for (const auto& p : points) {
    if (auto f = forbidden_interval_square(frame.to_local(p), size)) forbidden.push_back(*f);
  }
  auto shrunk = shrink(forbidden, tolerance());
  return feasible_set({0.0, frame.length()}, shrunk);
}

std::int64_t count_squares(std::span<const Point> points, const Segment& segment, double size) {
  return count_on_feasible(square_feasible_set(points, segment, size), effective_spacing(size));
}

std::int64_t count_disks(std::span<const Point> points, const Segment& segment, double lambda,
                         double alpha) {
  require_alpha(alpha);
  return count_on_feasible(disk_feasible_set(points, segment, lambda), effective_spacing(lambda / alpha));
}

std::optional<double> candidate_root(const EndpointFunc& left, const EndpointFunc& right, int t,
                                     double alpha, double lambda_max) {
  auto g = [&](double lambda) { return right(lambda) - left(lambda) - t * lambda / alpha; };
  if (g(0.0) < 0.0) return std::nullopt;
  if (g(lambda_max) >= 0.0) return std::nullopt;
  double lo = 0.0, hi = lambda_max;  // g(lo) >= 0 > g(hi)
  for (int it = 0; it < 200; ++it) {
    double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) >= 0.0) lo = mid; else hi = mid;
  }
  if (!(lo > 0.0)) return std::nullopt;
  return lo;
}

double line_lambda_max(std::span<const Point> points, const Segment& segment, double alpha) {
  SegmentFrame frame(segment);
  const double len = frame.length();
  double far = 0.0;
  for (const auto& p : points) {
    Point l = frame.to_local(p);
    double dx = l.x < 0.0 ? -l.x : (l.x > len ? l.x - len : 0.0);
    far = std::max(far, std::hypot(dx, l.y));
  }
  return std::max(len + far, alpha * len) + 1.0;
}

LineSolution solve_disks(std::span<const Point> points, const Segment& segment, int k, double alpha) {
  require_k(k);
  require_alpha(alpha);
  SegmentFrame frame(segment);
  const auto local = to_local(points, frame);
  const double len = frame.length();
  const double lambda_max = line_lambda_max(points, segment, alpha);

  auto feasible = [&](double lambda) { return count_disks(points, segment, lambda, alpha) >= k; };
  if (feasible(lambda_max))
    throw Error(ErrorKind::Unbounded, "radius is not bounded by any demand point");

  std::vector<EndpointFunc> lefts{EndpointFunc::constant(0.0)};
  std::vector<EndpointFunc> rights{EndpointFunc::constant(len)};
  for (const auto& p : local) {
    lefts.push_back(EndpointFunc::right_of(p));
    rights.push_back(EndpointFunc::left_of(p));
  }
  std::vector<std::pair<EndpointFunc, EndpointFunc>> pairs;
  pairs.reserve(lefts.size() * rights.size());
  for (const auto& l : lefts)
    for (const auto& r : rights) pairs.emplace_back(l, r);

  auto arrays = build_pair_arrays(pairs, k, alpha, lambda_max);
  auto found = search_arrays(arrays, {}, alpha, lambda_max, feasible);

  LineSolution sol;
  sol.lambda = found.value;
  sol.stats = found.stats;
  sol.placement.lambda = found.value;
  sol.placement.centers = witness(disk_feasible_set(points, segment, found.value), found.value / alpha, k);
  return sol;
}

LineSolution solve_squares(std::span<const Point> points, const Segment& segment, int k) {
  require_k(k);
  SegmentFrame frame(segment);
  const auto local = to_local(points, frame);
  const double len = frame.length();
  const double size_max = 2.0 * line_lambda_max(points, segment, 1.0);

  auto feasible = [&](double s) { return count_squares(points, segment, s) >= k; };
  if (feasible(size_max))
    throw Error(ErrorKind::Unbounded, "square size is not bounded by any demand point");

  // (1) Bracket the optimum between consecutive thresholds 2|y_i|.
  std::vector<double> thresholds;
  for (const auto& p : local)
    if (p.y != 0.0) thresholds.push_back(2.0 * std::abs(p.y));
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  std::size_t lo = 0, hi = thresholds.size();  // count of thresholds passing the test
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(thresholds[mid])) lo = mid + 1; else hi = mid;
  }
  const double lower = lo == 0 ? 0.0 : thresholds[lo - 1];

  // (2) Points that are active just above the lower bracket.
  std::vector<Point> kept;
  for (const auto& p : local)
    if (2.0 * std::abs(p.y) <= lower) kept.push_back(p);
  std::sort(kept.begin(), kept.end(), [](const Point& a, const Point& b) { return a.x < b.x; });

  // (3) Feasible-interval structure at the lower bracket; each gap is bounded
  // by a segment end or the nearest forbidden interval on either side.
  struct Group {
    Point first;
    Point last;
    double hi;
  };
  std::vector<Group> groups;
  for (const auto& p : kept) {
    double a = p.x - 0.5 * lower, b = p.x + 0.5 * lower;
    if (!groups.empty() && a < groups.back().hi) {
      groups.back().last = p;
      groups.back().hi = b;
    } else {
      groups.push_back({p, p, b});
    }
  }
  const auto sq = EndpointShape::Square;
  std::vector<std::pair<EndpointFunc, EndpointFunc>> pairs;
  auto add_gap = [&](const Group* before, const Group* after) {
    std::vector<EndpointFunc> ls{EndpointFunc::constant(0.0)};
    std::vector<EndpointFunc> rs{EndpointFunc::constant(len)};
    if (before) ls.push_back(EndpointFunc::right_of(before->last, sq));
    if (after) rs.push_back(EndpointFunc::left_of(after->first, sq));
    for (const auto& l : ls)
      for (const auto& r : rs) pairs.emplace_back(l, r);
  };
  if (groups.empty()) {
    add_gap(nullptr, nullptr);
  } else {
    add_gap(nullptr, &groups.front());
    for (std::size_t i = 0; i + 1 < groups.size(); ++i) add_gap(&groups[i], &groups[i + 1]);
    add_gap(&groups.back(), nullptr);
  }

  // Entry t of a gap array is the size at which the gap holds exactly t + 1
  // squares: r(s) - l(s) = t * s.
  auto arrays = build_pair_arrays(pairs, k, 1.0, size_max);
  std::vector<double> extra;
  if (lower > 0.0) extra.push_back(lower);
  auto found = search_arrays(arrays, extra, 1.0, size_max, feasible);

  LineSolution sol;
  sol.lambda = found.value;
  sol.stats = found.stats;
  sol.placement.lambda = found.value;
  sol.placement.centers = witness(square_feasible_set(points, segment, found.value), found.value, k);
  return sol;
}

}  // namespace dispersion
