#include "dispersion/pst.hpp"

#include <bit>
#include <string>

#include "dispersion/error.hpp"

namespace dispersion {

VersionedTree::VersionedTree(std::size_t n) : n_(n) {
  if (n == 0) throw Error(ErrorKind::InvalidSize, "tree needs at least one leaf");
  nodes_.push_back(Node{});
  roots_.push_back(0);
}

std::size_t VersionedTree::max_nodes_per_add() const {
  std::size_t depth = std::bit_width(n_ - 1);  // ceil(log2 n)
  return 2 * (depth + 1);
}

std::uint32_t VersionedTree::point_update(std::uint32_t node, std::size_t lo, std::size_t hi,
                                          std::size_t pos, std::int64_t delta) {
  Node copy = nodes_[node];
  copy.sum += delta;
  if (lo != hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (pos <= mid) {
      copy.left = point_update(copy.left, lo, mid, pos, delta);
    } else {
      copy.right = point_update(copy.right, mid + 1, hi, pos, delta);
    }
  }
  nodes_.push_back(copy);
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::size_t VersionedTree::add(std::size_t i, std::size_t j, std::int64_t delta) {
  if (i < 1 || j > n_ || i > j) {
    throw Error(ErrorKind::IndexError, "ADD range [" + std::to_string(i) + ", " + std::to_string(j) +
                                           "] outside [1, " + std::to_string(n_) + "]");
  }
  std::uint32_t root = roots_.back();
  root = point_update(root, 1, n_, i, delta);
  if (j < n_) root = point_update(root, 1, n_, j + 1, -delta);
  roots_.push_back(root);
  return roots_.size() - 1;
}

std::int64_t VersionedTree::query(std::size_t i, std::size_t t) const {
  if (t >= roots_.size()) {
    throw Error(ErrorKind::VersionError, "version " + std::to_string(t) + " does not exist");
  }
  if (i < 1 || i > n_) {
    throw Error(ErrorKind::IndexError, "index " + std::to_string(i) + " outside [1, " +
                                           std::to_string(n_) + "]");
  }
  // Prefix sum D[1..i].
  std::int64_t acc = 0;
  std::uint32_t node = roots_[t];
  std::size_t lo = 1, hi = n_;
  while (lo != hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    const Node& cur = nodes_[node];
    if (i <= mid) {
      node = cur.left;
      hi = mid;
    } else {
      acc += nodes_[cur.left].sum;
      node = cur.right;
      lo = mid + 1;
    }
  }
  return acc + nodes_[node].sum;
}

}  // namespace dispersion
