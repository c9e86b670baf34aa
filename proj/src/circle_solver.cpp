#include "dispersion/circle_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <optional>

#include "dispersion/error.hpp"
#include "dispersion/line_solver.hpp"
#include "dispersion/pst.hpp"

namespace dispersion {

namespace {

constexpr std::size_t kNone = JumpTables::kNone;

std::int64_t saturating_floor(double v) {
  if (!(v < static_cast<double>(kCountCap))) return kCountCap;
  return static_cast<std::int64_t>(std::floor(v));
}

/// Angular gap between two arcs given by their mid angles and half-widths.
struct ArcFunc {
  double phi = 0.0;
  double d = 0.0;
  double r = 1.0;

  double half_width(double lambda) const {
    if (lambda == d + r) return kPi;
    if (lambda > d + r) return std::nextafter(kPi, 4.0) + (lambda - d - r);
    if (lambda <= std::abs(d - r)) return 0.0;
    double c = std::clamp((r * r + d * d - lambda * lambda) / (2.0 * r * d), -1.0, 1.0);
    return std::acos(c);
  }
};

/// sup{lambda in [0, hi] : g(lambda) >= 0} for nonincreasing g with g(0) >= 0 > g(hi).
double last_nonnegative(const std::function<double(double)>& g, double hi) {
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) >= 0.0) lo = mid; else hi = mid;
  }
  return lo;
}

/// Arc of width >= step, if any: the widest one.
std::optional<std::size_t> long_arc(const RingModel& ring) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (ring.arcs[i].length() >= ring.step &&
        (!best || ring.arcs[i].length() > ring.arcs[*best].length()))
      best = i;
  }
  return best;
}

/// Feasible set of the ring cut open behind arc `cut`: [right end, left end + C].
FeasibleSet cut_feasible(const RingModel& ring, std::size_t cut) {
  const std::size_t n = ring.size();
  std::vector<OpenInterval> others;
  for (std::size_t x = cut + 1; x < cut + n; ++x) others.push_back({ring.left(x), ring.right(x)});
  return feasible_set({ring.right(cut), ring.left(cut + n)}, others);
}

}  // namespace

double RingModel::left(std::size_t x) const {
  const std::size_t n = arcs.size();
  return arcs[x % n].lo + static_cast<double>(x / n) * circumference;
}

double RingModel::right(std::size_t x) const {
  const std::size_t n = arcs.size();
  return arcs[x % n].hi + static_cast<double>(x / n) * circumference;
}

JumpTables build_jump_tables(const RingModel& model, std::int64_t cap) {
  const std::size_t n = model.size();
  const double step = model.step;
  if (n == 0) throw Error(ErrorKind::ModelInvariantViolation, "ring model has no arcs");
  if (!(step > 0.0)) throw Error(ErrorKind::ModelInvariantViolation, "ring step must be positive");
  for (const auto& a : model.arcs) {
    if (a.length() >= step) throw Error(ErrorKind::ModelInvariantViolation, "arc not shorter than the step");
  }

  const std::size_t m = 2 * n;
  auto residue = [&](double v) {
    double r = std::fmod(v - model.origin, step);
    if (r < 0.0) r += step;
    if (r >= step) r = 0.0;
    return r;
  };
  std::vector<double> lres(m), rres(m);
  std::vector<bool> wraps(m);
  for (std::size_t x = 0; x < m; ++x) {
    lres[x] = residue(model.left(x));
    double r = lres[x] + (model.right(x) - model.left(x));
    wraps[x] = r >= step;
    rres[x] = wraps[x] ? r - step : r;
  }
  std::vector<double> values(lres);
  values.insert(values.end(), rres.begin(), rres.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  auto idx = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), v) - values.begin()) + 1;
  };

  const std::size_t size = values.size();
  VersionedTree tree(size);
  std::vector<std::size_t> version(m);
  for (std::size_t x = 0; x < m; ++x) {
    std::size_t a = idx(lres[x]), b = idx(rres[x]);
    if (!wraps[x]) {
      if (a + 1 <= b - 1 && b >= 1) tree.add(a + 1, b - 1);
    } else {
      if (a + 1 <= size) tree.add(a + 1, size);
      if (b >= 2) tree.add(1, b - 1);
    }
    version[x] = tree.latest();
  }

  JumpTables t;
  t.arcs = n;
  std::size_t span = cap > 0 ? static_cast<std::size_t>(cap) : n;
  t.levels = static_cast<std::size_t>(std::bit_width(span)) + 1;
  t.N.assign(m, std::vector<std::size_t>(t.levels, kNone));
  t.C.assign(m, std::vector<std::int64_t>(t.levels, 0));

  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t q = idx(rres[x]);
    const std::int64_t base = tree.query(q, version[x]);
    std::size_t lo = x + 1, hi = m;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (tree.query(q, version[mid]) > base) hi = mid; else lo = mid + 1;
    }
    if (lo < m) {
      t.N[x][0] = lo;
      t.C[x][0] = saturating_floor((model.left(lo) - model.right(x)) / step) + 1;
    }
  }
  for (std::size_t j = 1; j < t.levels; ++j) {
    for (std::size_t x = 0; x < m; ++x) {
      std::size_t mid = t.N[x][j - 1];
      if (mid == kNone || t.N[mid][j - 1] == kNone) continue;
      t.N[x][j] = t.N[mid][j - 1];
      t.C[x][j] = std::min(kCountCap, t.C[x][j - 1] + t.C[mid][j - 1]);
    }
  }
  return t;
}

std::int64_t cal(std::size_t start, const JumpTables& tables, const RingModel& model, std::int64_t cap) {
  const std::size_t n = tables.arcs;
  if (start >= n) throw Error(ErrorKind::IndexError, "start must be an arc of the first lap");
  const std::size_t target = start + n;
  std::size_t x = start;
  std::int64_t num = 0;
  for (std::size_t j = tables.levels; j-- > 0;) {
    std::size_t next = tables.N[x][j];
    if (next != kNone && next <= target) {
      num = std::min(kCountCap, num + tables.C[x][j]);
      x = next;
      if (cap > 0 && num >= cap) return num;
    }
  }
  if (x == target) return num;
  if (tables.N[x][0] != kNone && tables.N[x][0] <= target) return std::max(num, cap);
  // Remaining run from x up to the anchor one lap later, keeping the closing gap.
  double rest = model.right(start) + model.circumference - model.right(x);
  return std::min(kCountCap, num + saturating_floor(rest / model.step));
}

double circle_step(double delta, double radius) {
  return 2.0 * std::asin(std::min(1.0, delta / (2.0 * radius)));
}

CircleModel circle_model(std::span<const Point> points, const CircleSpec& circle, double lambda,
                         double alpha) {
  validate(circle);
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidGeometry, "alpha must be positive");
  CircleModel model;
  const double eps = tolerance();
  const double delta = lambda / alpha;
  const double delta_eff = std::max(delta - eps, 0.5 * delta);
  model.diameter = delta_eff > 2.0 * circle.radius;
  model.ring.circumference = kTwoPi;
  model.ring.step = circle_step(delta_eff, circle.radius);

  std::vector<OpenInterval> arcs;
  for (const auto& p : points) {
    auto arc = forbidden_arc(p, circle, lambda);
    if (!arc) continue;
    if (arc->full) {
      model.full = true;
      return model;
    }
    OpenInterval iv{arc->mid - arc->half_width + eps, arc->mid + arc->half_width - eps};
    if (iv.lo < iv.hi) arcs.push_back(iv);
  }
  RingCover cover = merge_ring_arcs(std::move(arcs), kTwoPi);
  model.full = cover.full;
  model.ring.arcs = std::move(cover.arcs);
  if (!model.ring.arcs.empty()) model.ring.origin = model.ring.arcs.front().lo;
  return model;
}

CircleCount count_circle_detail(std::span<const Point> points, const CircleSpec& circle, double lambda,
                                double alpha, std::int64_t cap) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidGeometry, "lambda must be positive");
  CircleModel model = circle_model(points, circle, lambda, alpha);
  const RingModel& ring = model.ring;
  CircleCount out;
  if (model.full) {
    out.route = CircleRoute::Blocked;
    return out;
  }
  if (model.diameter) {
    out.route = CircleRoute::Diameter;
    out.count = 1;
    out.anchor = ring.arcs.empty() ? 0.0 : ring.arcs.front().hi;
    return out;
  }
  if (ring.arcs.empty()) {
    out.route = CircleRoute::Empty;
    out.count = saturating_floor(kTwoPi / ring.step);
    return out;
  }
  if (auto cut = long_arc(ring)) {
    out.route = CircleRoute::LongGap;
    out.count = count_on_feasible(cut_feasible(ring, *cut), ring.step);
    out.anchor = ring.right(*cut);
    return out;
  }
  out.route = CircleRoute::Jump;
  JumpTables tables = build_jump_tables(ring, cap);
  out.count = -1;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    std::int64_t c = cal(i, tables, ring, cap);
    if (c > out.count) {
      out.count = c;
      out.anchor = ring.right(i);
    }
    if (cap > 0 && c >= cap) break;
  }
  return out;
}

std::int64_t count_circle(std::span<const Point> points, const CircleSpec& circle, double lambda,
                          double alpha) {
  return count_circle_detail(points, circle, lambda, alpha).count;
}

std::vector<double> circle_greedy(std::span<const Point> points, const CircleSpec& circle, double lambda,
                                  double alpha, std::size_t limit) {
  CircleCount best = count_circle_detail(points, circle, lambda, alpha);
  CircleModel model = circle_model(points, circle, lambda, alpha);
  const RingModel& ring = model.ring;
  std::vector<double> angles;
  switch (best.route) {
    case CircleRoute::Blocked:
      break;
    case CircleRoute::Diameter:
      angles.push_back(best.anchor);
      break;
    case CircleRoute::Empty:
      for (std::int64_t i = 0; i < best.count && angles.size() < limit; ++i) angles.push_back(i * ring.step);
      break;
    case CircleRoute::LongGap:
      angles = greedy_on_feasible(cut_feasible(ring, *long_arc(ring)), ring.step, limit);
      break;
    case CircleRoute::Jump: {
      std::vector<OpenInterval> laps;
      for (std::size_t x = 0; x < 3 * ring.size(); ++x)
        laps.push_back({ring.arcs[x % ring.size()].lo + static_cast<double>(x / ring.size()) * ring.circumference,
                        ring.arcs[x % ring.size()].hi + static_cast<double>(x / ring.size()) * ring.circumference});
      const double close = best.anchor + ring.circumference - ring.step;
      double pos = best.anchor;
      angles.push_back(pos);
      while (angles.size() < limit) {
        double next = pos + ring.step;
        auto it = std::upper_bound(laps.begin(), laps.end(), next,
                                   [](double v, const OpenInterval& a) { return v < a.lo; });
        if (it != laps.begin() && std::prev(it)->contains(next)) next = std::prev(it)->hi;
        if (next > close) break;
        angles.push_back(next);
        pos = next;
      }
      break;
    }
  }
  for (auto& a : angles) a = normalize_angle(a);
  return angles;
}

CircleSolution solve_circle(std::span<const Point> points, const CircleSpec& circle, int k, double alpha) {
  validate(circle);
  if (k < 1) throw Error(ErrorKind::InvalidGeometry, "k must be at least 1");
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidGeometry, "alpha must be positive");
  const double r = circle.radius;

  std::vector<ArcFunc> funcs;
  double far = 0.0;
  for (const auto& p : points) {
    validate(p);
    double dx = p.x - circle.center.x, dy = p.y - circle.center.y;
    ArcFunc f{normalize_angle(std::atan2(dy, dx)), std::hypot(dx, dy), r};
    far = std::max(far, f.d + r);
    funcs.push_back(f);
  }
  const double lambda_max = far + 2.0 * alpha * r + 1.0;
  auto feasible = [&](double lambda) {
    return lambda > 0.0 && count_circle_detail(points, circle, lambda, alpha, k).count >= k;
  };
  if (feasible(lambda_max)) throw Error(ErrorKind::Unbounded, "radius is not bounded by any demand point");

  auto theta = [&](double lambda) { return circle_step(lambda / alpha, r); };

  // Pair (i, j): gap from the right end of arc i to the left end of arc j
  // going counterclockwise; i == j is the gap around the whole ring.
  struct PairArray {
    std::size_t i, j;
    int t_first, length;
  };
  auto gap = [&](std::size_t i, std::size_t j, double lambda) {
    double base = kTwoPi;
    if (i != j) {
      base = std::fmod(funcs[j].phi - funcs[i].phi, kTwoPi);
      if (base < 0.0) base += kTwoPi;
    }
    return base - funcs[i].half_width(lambda) - funcs[j].half_width(lambda);
  };
  std::vector<PairArray> arrays;
  const int t_count = k + 1;
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    for (std::size_t j = 0; j < funcs.size(); ++j) {
      double g0 = gap(i, j, 0.0);
      if (g0 < 0.0) continue;
      if (g0 == 0.0) {
        if (gap(i, j, lambda_max) < 0.0) arrays.push_back({i, j, 0, 1});
        continue;
      }
      auto below = [&](int t) { return gap(i, j, lambda_max) - t * theta(lambda_max) < 0.0; };
      int lo = 0, hi = t_count;
      while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (below(mid)) hi = mid; else lo = mid + 1;
      }
      if (lo < t_count) arrays.push_back({i, j, lo, t_count - lo});
    }
  }
  std::vector<double> even;  // t centers evenly spaced with no points
  for (int t = 2; t <= k; ++t) even.push_back(2.0 * alpha * r * std::sin(kPi / t));

  CandidateFamily family;
  family.arrays = arrays.size() + (even.empty() ? 0 : 1);
  family.length = [&](std::size_t a) -> std::size_t {
    return a < arrays.size() ? static_cast<std::size_t>(arrays[a].length) : even.size();
  };
  family.eval = [&](std::size_t a, std::size_t idx) -> double {
    if (a >= arrays.size()) return even[idx];
    const PairArray& pa = arrays[a];
    const int t = pa.t_first + static_cast<int>(idx);
    return last_nonnegative([&](double l) { return gap(pa.i, pa.j, l) - t * theta(l); }, lambda_max);
  };
  FeasibilityPredicate pred{feasible, FeasibleDirection::Below};

  CircleSolution sol;
  try {
    sol.lambda = optimal_feasible(family, pred, &sol.stats);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NoFeasibleCandidate)
      throw Error(ErrorKind::Infeasible, "no positive radius admits the requested number of centers");
    throw;
  }
  sol.placement.lambda = sol.lambda;
  sol.placement.angles = circle_greedy(points, circle, sol.lambda, alpha, static_cast<std::size_t>(k));
  for (double a : sol.placement.angles)
    sol.placement.centers.emplace_back(circle.center.x + r * std::cos(a), circle.center.y + r * std::sin(a));
  return sol;
}

}  // namespace dispersion
