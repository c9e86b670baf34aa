#include "dispersion/mofl_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "dispersion/error.hpp"

namespace dispersion {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

void require_links(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidGeometry, "k must be at least 1");
}

KLinkResult finish(const MoflGraph& g, int k, double cost,
                   const std::vector<std::vector<std::uint32_t>>& arg) {
  if (!std::isfinite(cost)) throw Error(ErrorKind::NoFeasiblePath, "no path with " + std::to_string(k + 1) + " links");
  KLinkResult out;
  out.cost = cost;
  out.covered_weight = g.total_weight() + cost;
  std::vector<std::size_t> path{g.nodes() - 1};
  std::size_t y = g.nodes() - 1;
  for (int t = k + 1; t >= 1; --t) {
    y = arg[static_cast<std::size_t>(t)][y];
    path.push_back(y);
  }
  std::reverse(path.begin(), path.end());
  out.path = std::move(path);
  return out;
}

/// Last allowed predecessor (internal node) of every internal node y; 0 if none.
std::vector<std::size_t> staircase(const MoflGraph& g) {
  const std::size_t m = g.internal();
  std::vector<std::size_t> last(m + 1, 0);
  std::size_t x = 0;
  for (std::size_t y = 1; y <= m; ++y) {
    while (x + 1 < y && g.allowed(x + 1, y)) ++x;
    last[y] = x;
  }
  return last;
}

class LayerSolver {
 public:
  LayerSolver(const MoflGraph& g, const std::vector<double>& prev, const std::vector<std::size_t>& last,
              std::vector<double>& best, std::vector<std::uint32_t>& arg)
      : g_(g), prev_(prev), last_(last), best_(best), arg_(arg) {}

  void run() {
    const std::size_t m = g_.internal();
    std::size_t r0 = 1;
    while (r0 <= m && last_[r0] < 1) ++r0;
    if (r0 <= m) block(1, m, r0, m);
  }

 private:
  // Rows r1..r2 all see column c1; rows seeing all of [c1, c2] form a suffix.
  void block(std::size_t c1, std::size_t c2, std::size_t r1, std::size_t r2) {
    if (r1 > r2) return;
    std::size_t s = r1;
    while (s <= r2 && last_[s] < c2) ++s;
    if (s <= r2) rect(s, r2, c1, c2);
    if (c1 == c2 || s == r1) return;
    std::size_t mid = c1 + (c2 - c1) / 2;
    block(c1, mid, r1, s - 1);
    std::size_t s2 = r1;
    while (s2 < s && last_[s2] < mid + 1) ++s2;
    if (s2 < s) block(mid + 1, c2, s2, s - 1);
  }

  // Full rectangle: the row minimum's column is nonincreasing in the row.
  void rect(std::size_t r1, std::size_t r2, std::size_t c1, std::size_t c2) {
    if (r1 > r2) return;
    std::size_t y = r1 + (r2 - r1) / 2;
    double v = kInf;
    std::size_t at = kNoNode;
    for (std::size_t x = c1; x <= c2; ++x) {
      if (!std::isfinite(prev_[x])) continue;
      double c = prev_[x] + g_.weight(x, y);
      if (c < v) {
        v = c;
        at = x;
      }
    }
    if (at == kNoNode) return;  // every column in range is unreachable
    if (v < best_[y]) {
      best_[y] = v;
      arg_[y] = static_cast<std::uint32_t>(at);
    }
    if (y > r1) rect(r1, y - 1, at, c2);
    if (y < r2) rect(y + 1, r2, c1, at);
  }

  const MoflGraph& g_;
  const std::vector<double>& prev_;
  const std::vector<std::size_t>& last_;
  std::vector<double>& best_;
  std::vector<std::uint32_t>& arg_;
};

}  // namespace

std::vector<InfluenceInterval> influence_intervals(std::span<const Point> points, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::InvalidGeometry, "lambda must be positive");
  std::vector<InfluenceInterval> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    validate(p);
    double y = std::abs(p.y);
    if (y >= lambda) continue;
    double h = std::sqrt((lambda - y) * (lambda + y));
    if (!(h > 0.0)) continue;
    out.push_back({p.x - h, p.x + h, p.weight.value_or(1.0), i});
  }
  return out;
}

std::vector<double> candidate_positions(std::span<const InfluenceInterval> intervals, double p, double q,
                                        int k, double sep) {
  std::vector<double> base{p, q};
  for (const auto& iv : intervals) {
    base.push_back(iv.lo);
    base.push_back(iv.hi);
  }
  std::vector<double> all;
  for (double b : base) {
    for (int j = 0; j < std::max(k, 1); ++j) {
      double v = b + j * sep;
      if (v > q) break;
      if (v >= p) all.push_back(v);
    }
  }
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double v : all)
    if (out.empty() || v - out.back() > 1e-12) out.push_back(v);
  return out;
}

MoflGraph::MoflGraph(std::vector<double> positions, std::vector<InfluenceInterval> intervals, double sep)
    : positions_(std::move(positions)), intervals_(std::move(intervals)), sep_(sep), eps_(tolerance()) {
  const std::size_t m = positions_.size();
  const std::size_t n = intervals_.size();
  std::vector<std::size_t> first(n), last(n);
  for (std::size_t j = 0; j < n; ++j) {
    total_ += intervals_[j].weight;
    first[j] = static_cast<std::size_t>(
        std::upper_bound(positions_.begin(), positions_.end(), intervals_[j].lo) - positions_.begin());
    last[j] = static_cast<std::size_t>(
                  std::lower_bound(positions_.begin(), positions_.end(), intervals_[j].hi) - positions_.begin()) + 1;
  }
  std::vector<std::size_t> fs(first), ls(last);
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

  rank_first_.resize(m + 2);
  rank_last_.resize(m + 2);
  for (std::size_t x = 0; x < m + 2; ++x) {
    rank_first_[x] = static_cast<std::size_t>(std::lower_bound(fs.begin(), fs.end(), x) - fs.begin());
    rank_last_[x] = static_cast<std::size_t>(std::upper_bound(ls.begin(), ls.end(), x) - ls.begin());
  }
  const std::size_t rows = fs.size() + 1;
  cols_ = ls.size() + 1;
  table_.assign(rows * cols_, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t a = static_cast<std::size_t>(std::lower_bound(fs.begin(), fs.end(), first[j]) - fs.begin());
    std::size_t b = static_cast<std::size_t>(std::lower_bound(ls.begin(), ls.end(), last[j]) - ls.begin());
    table_[a * cols_ + b + 1] += intervals_[j].weight;
  }
  // table(i, c) = weight with first-rank >= i and last-rank < c.
  for (std::size_t i = rows - 1; i-- > 0;)
    for (std::size_t c = 0; c < cols_; ++c) table_[i * cols_ + c] += table_[(i + 1) * cols_ + c];
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 1; c < cols_; ++c) table_[i * cols_ + c] += table_[i * cols_ + c - 1];
}

double MoflGraph::position(std::size_t node) const {
  if (node == 0) return -kInf;
  if (node > positions_.size()) return kInf;
  return positions_[node - 1];
}

bool MoflGraph::allowed(std::size_t x, std::size_t y) const {
  const std::size_t m = positions_.size();
  if (x == 0 || y == m + 1) return true;
  return !(positions_[y - 1] - positions_[x - 1] < sep_ - eps_);
}

double MoflGraph::weight(std::size_t x, std::size_t y) const {
  if (x >= y || y >= nodes()) throw Error(ErrorKind::InvalidEdge, "edge needs x < y within the graph");
  if (!allowed(x, y)) return kInf;
  return 0.0 - table_[rank_first_[x] * cols_ + rank_last_[y]];
}

double edge_weight(const MoflGraph& graph, std::size_t x, std::size_t y) { return graph.weight(x, y); }

std::optional<std::pair<std::size_t, std::size_t>> monge_check(const MoflGraph& g) {
  const std::size_t n = g.nodes();
  for (std::size_t x = 0; x + 1 < n; ++x) {
    for (std::size_t y = x + 2; y + 1 < n; ++y) {
      double a = g.weight(x, y), b = g.weight(x + 1, y + 1), c = g.weight(x, y + 1), d = g.weight(x + 1, y);
      if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) continue;
      if (a + b < c + d) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

KLinkResult klink_shortest_path(const MoflGraph& g, int k) {
  require_links(k);
  const std::size_t m = g.internal();
  const std::size_t sink = m + 1;
  std::vector<std::vector<std::uint32_t>> arg(static_cast<std::size_t>(k) + 2,
                                              std::vector<std::uint32_t>(m + 2, 0));
  std::vector<double> prev(m + 2, kInf), cur(m + 2, kInf);
  for (std::size_t y = 1; y <= m; ++y) prev[y] = g.weight(0, y);
  const auto last = staircase(g);
  for (int t = 2; t <= k; ++t) {
    std::fill(cur.begin(), cur.end(), kInf);
    LayerSolver(g, prev, last, cur, arg[static_cast<std::size_t>(t)]).run();
    std::swap(prev, cur);
  }
  double best = kInf;
  for (std::size_t x = 1; x <= m; ++x) {
    if (!std::isfinite(prev[x])) continue;
    double c = prev[x] + g.weight(x, sink);
    if (c < best) {
      best = c;
      arg[static_cast<std::size_t>(k) + 1][sink] = static_cast<std::uint32_t>(x);
    }
  }
  return finish(g, k, best, arg);
}

KLinkResult dp_baseline(const MoflGraph& g, int k) {
  require_links(k);
  const std::size_t m = g.internal();
  const std::size_t sink = m + 1;
  std::vector<std::vector<std::uint32_t>> arg(static_cast<std::size_t>(k) + 2,
                                              std::vector<std::uint32_t>(m + 2, 0));
  std::vector<double> prev(m + 2, kInf), cur(m + 2, kInf);
  prev[0] = 0.0;
  for (int t = 1; t <= k + 1; ++t) {
    std::fill(cur.begin(), cur.end(), kInf);
    std::size_t lo = t == k + 1 ? sink : 1, hi = t == k + 1 ? sink : m;
    for (std::size_t y = lo; y <= hi; ++y) {
      for (std::size_t x = 0; x < y; ++x) {
        if (!std::isfinite(prev[x])) continue;
        double w = g.weight(x, y);
        if (!std::isfinite(w)) continue;
        if (prev[x] + w < cur[y]) {
          cur[y] = prev[x] + w;
          arg[static_cast<std::size_t>(t)][y] = static_cast<std::uint32_t>(x);
        }
      }
    }
    std::swap(prev, cur);
  }
  return finish(g, k, prev[sink], arg);
}

MoflGraph build_mofl_graph(const MoflInstance& inst) {
  validate(inst.segment);
  require_links(inst.k);
  if (!(inst.alpha > 0.0) || !std::isfinite(inst.alpha)) throw Error(ErrorKind::InvalidGeometry, "alpha must be positive");
  SegmentFrame frame(inst.segment);
  std::vector<Point> local;
  for (const auto& p : inst.points) {
    if (p.weight && !(*p.weight > 0.0)) throw Error(ErrorKind::InvalidGeometry, "weights must be positive");
    local.push_back(frame.to_local(p));
  }
  const double sep = inst.alpha * inst.lambda;
  auto intervals = influence_intervals(local, inst.lambda);
  auto positions = candidate_positions(intervals, 0.0, frame.length(), inst.k, sep);
  return MoflGraph(std::move(positions), std::move(intervals), sep);
}

MoflSolution solve_mofl(const MoflInstance& inst) {
  SegmentFrame frame(inst.segment);
  const double sep = inst.alpha * inst.lambda;
  if ((inst.k - 1) * sep > frame.length() + tolerance())
    throw Error(ErrorKind::Infeasible, "k centers do not fit at the required separation");
  MoflGraph g = build_mofl_graph(inst);
  MoflSolution sol;
  sol.path = klink_shortest_path(g, inst.k);
  sol.covered_weight = sol.path.covered_weight;
  sol.positions = g.internal();
  for (std::size_t i = 1; i + 1 < sol.path.path.size(); ++i) sol.centers.push_back(g.position(sol.path.path[i]));
  return sol;
}

}  // namespace dispersion
