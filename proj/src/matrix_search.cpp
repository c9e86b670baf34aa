#include "dispersion/matrix_search.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "dispersion/error.hpp"

namespace dispersion {

namespace {

// Ascending view of the family: value(i, t) nondecreasing in t. The core
// always looks for the smallest value that passes `test`, with test monotone
// upward (feasible-above). Feasible-below is obtained by negation.
class AscendingView {
 public:
  AscendingView(const CandidateFamily& family, bool negate, MatrixSearchStats& stats)
      : family_(family), negate_(negate), stats_(stats) {}

  std::size_t length(std::size_t i) const { return family_.length(i); }

  double value(std::size_t i, std::size_t t) {
    std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) ^ static_cast<std::uint64_t>(t);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    ++stats_.evaluations;
    double v;
    if (negate_) {
      v = -family_.eval(i, t);
    } else {
      v = family_.eval(i, length(i) - 1 - t);
    }
    cache_.emplace(key, v);
    return v;
  }

 private:
  const CandidateFamily& family_;
  bool negate_;
  MatrixSearchStats& stats_;
  std::unordered_map<std::uint64_t, double> cache_;
};

struct Window {
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::size_t size() const { return hi - lo; }
};

}  // namespace

double optimal_feasible(const CandidateFamily& family, const FeasibilityPredicate& pred,
                        MatrixSearchStats* stats_out) {
  MatrixSearchStats stats;
  const bool negate = pred.direction == FeasibleDirection::Below;
  AscendingView view(family, negate, stats);
  auto test = [&](double u) {
    ++stats.predicate_calls;
    return pred.test(negate ? -u : u);
  };

  std::vector<Window> win(family.arrays);
  std::size_t total = 0;
  for (std::size_t i = 0; i < family.arrays; ++i) {
    win[i] = {0, view.length(i)};
    total += win[i].size();
  }

  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<std::pair<double, std::size_t>> reps;

  while (total > 0) {
    ++stats.iterations;
    reps.clear();
    for (std::size_t i = 0; i < win.size(); ++i) {
      if (win[i].size() == 0) continue;
      std::size_t mid = win[i].lo + win[i].size() / 2;
#ifndef NDEBUG
      if (mid + 1 < win[i].hi) assert(view.value(i, mid) <= view.value(i, mid + 1));
#endif
      reps.emplace_back(view.value(i, mid), win[i].size());
    }
    std::sort(reps.begin(), reps.end());
    // Weighted median: first representative whose cumulative weight reaches half.
    double median = reps.back().first;
    std::size_t acc = 0;
    for (const auto& [v, w] : reps) {
      acc += w;
      if (2 * acc >= total) {
        median = v;
        break;
      }
    }

    const bool feasible = test(median);
    if (feasible) {
      found = true;
      best = std::min(best, median);
    }
    total = 0;
    for (std::size_t i = 0; i < win.size(); ++i) {
      Window& w = win[i];
      if (w.size() == 0) continue;
      std::size_t lo = w.lo, hi = w.hi;
      if (feasible) {
        // Drop every entry >= median: new hi = lower_bound(median).
        while (lo < hi) {
          std::size_t m = lo + (hi - lo) / 2;
          if (view.value(i, m) < median) lo = m + 1; else hi = m;
        }
        w.hi = lo;
      } else {
        // Drop every entry <= median: new lo = upper_bound(median).
        while (lo < hi) {
          std::size_t m = lo + (hi - lo) / 2;
          if (view.value(i, m) <= median) lo = m + 1; else hi = m;
        }
        w.lo = lo;
      }
      total += w.size();
    }
  }

  if (stats_out) *stats_out = stats;
  if (!found) throw Error(ErrorKind::NoFeasibleCandidate, "no candidate passes the feasibility test");
  return negate ? -best : best;
}

}  // namespace dispersion
