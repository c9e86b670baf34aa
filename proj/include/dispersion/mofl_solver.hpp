#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dispersion/geom.hpp"

namespace dispersion {

/// Separation between consecutive centers is alpha * lambda here.
struct MoflInstance {
  std::vector<Point> points;  // weight defaults to 1 when absent
  Segment segment;
  int k = 1;
  double lambda = 1.0;
  double alpha = 1.0;
};

/// Centers strictly inside (lo, hi) cover the owner point.
struct InfluenceInterval {
  double lo = 0.0;
  double hi = 0.0;
  double weight = 1.0;
  std::size_t owner = 0;
};

/// Points are taken in the segment's local frame (segment on the x-axis).
std::vector<InfluenceInterval> influence_intervals(std::span<const Point> points, double lambda);

/// Endpoints p, q and every interval endpoint, each extended by j * sep for
/// 1 <= j < k, clipped to [p, q], sorted and deduplicated.
std::vector<double> candidate_positions(std::span<const InfluenceInterval> intervals, double p, double q,
                                        int k, double sep);

/// Complete DAG over node 0 (before p), the candidate positions 1..m and
/// node m+1 (after q). w(x, y) is minus the weight of intervals lying inside
/// [pos(x), pos(y)]; edges between two centers closer than sep are absent.
class MoflGraph {
 public:
  MoflGraph(std::vector<double> positions, std::vector<InfluenceInterval> intervals, double sep);

  std::size_t internal() const { return positions_.size(); }
  std::size_t nodes() const { return positions_.size() + 2; }
  double position(std::size_t node) const;
  const std::vector<double>& positions() const { return positions_; }
  const std::vector<InfluenceInterval>& intervals() const { return intervals_; }
  double separation() const { return sep_; }
  double total_weight() const { return total_; }

  /// False for pairs of centers closer than the separation.
  bool allowed(std::size_t x, std::size_t y) const;

  /// Edge weight in O(1); +inf when not allowed. Throws InvalidEdge for x >= y.
  double weight(std::size_t x, std::size_t y) const;

 private:
  std::vector<double> positions_;
  std::vector<InfluenceInterval> intervals_;
  double sep_;
  double eps_;
  double total_ = 0.0;
  // Interval j is inside [x, y] iff x <= first_[j] and last_[j] <= y; the
  // table sums weights over compressed (first, last) ranks.
  std::vector<std::size_t> rank_first_;  // per node
  std::vector<std::size_t> rank_last_;   // per node
  std::size_t cols_ = 0;
  std::vector<double> table_;
};

double edge_weight(const MoflGraph& graph, std::size_t x, std::size_t y);

/// First 2x2 submatrix (x, y), (x+1, y+1) with four finite entries that
/// breaks w(x,y) + w(x+1,y+1) >= w(x,y+1) + w(x+1,y).
std::optional<std::pair<std::size_t, std::size_t>> monge_check(const MoflGraph& graph);

struct KLinkResult {
  double cost = 0.0;
  std::vector<std::size_t> path;  // k + 2 nodes, sentinels included
  double covered_weight = 0.0;
};

/// Minimum-cost path from node 0 to node m+1 with exactly k+1 links. Layered
/// over link counts; each layer is a row-minima problem on a staircase of
/// Monge blocks.
KLinkResult klink_shortest_path(const MoflGraph& graph, int k);

/// Plain O(k m^2) dynamic program with the same contract.
KLinkResult dp_baseline(const MoflGraph& graph, int k);

struct MoflSolution {
  double covered_weight = 0.0;
  std::vector<double> centers;  // offsets along pq
  KLinkResult path;
  std::size_t positions = 0;
};

/// Builds the graph for an instance (local frame).
MoflGraph build_mofl_graph(const MoflInstance& inst);

MoflSolution solve_mofl(const MoflInstance& inst);

}  // namespace dispersion
