#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dispersion {

/// Partially persistent array A[1..n] of counters, all zero in version 0.
/// add(i, j) increments A[i..j] and creates a new version; every earlier
/// version stays queryable.
///
/// Internally A is stored as a difference array D (A[x] = D[1] + ... + D[x])
/// in a path-copying segment tree: one ADD is two point updates, so it
/// allocates at most 2 * (ceil(log2 n) + 1) nodes.
class VersionedTree {
 public:
  explicit VersionedTree(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t versions() const { return roots_.size(); }
  std::size_t latest() const { return roots_.size() - 1; }
  std::size_t node_count() const { return nodes_.size(); }

  /// 1-based inclusive range; returns the id of the new version.
  std::size_t add(std::size_t i, std::size_t j, std::int64_t delta = 1);

  /// Value of A[i] (1-based) in version t.
  std::int64_t query(std::size_t i, std::size_t t) const;

  /// Upper bound on nodes allocated by one add().
  std::size_t max_nodes_per_add() const;

 private:
  struct Node {
    std::int64_t sum = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
  };

  std::uint32_t point_update(std::uint32_t node, std::size_t lo, std::size_t hi, std::size_t pos,
                             std::int64_t delta);

  std::size_t n_;
  std::vector<Node> nodes_;       // nodes_[0] is the shared all-zero node
  std::vector<std::uint32_t> roots_;
};

}  // namespace dispersion
