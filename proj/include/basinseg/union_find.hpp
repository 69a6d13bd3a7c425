#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace basinseg {

/// Disjoint sets over 0..n-1 with path halving and union by set count.
/// Callers that need per-cluster data keep it in arrays indexed by root.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), count_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::size_t size() const { return parent_.size(); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Joins two distinct roots and returns the surviving root.
  std::uint32_t link(std::uint32_t ra, std::uint32_t rb) {
    if (count_[ra] < count_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    count_[ra] += count_[rb];
    return ra;
  }

  /// Returns false when a and b were already joined.
  bool unite(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t ra = find(a);
    const std::uint32_t rb = find(b);
    if (ra == rb) return false;
    link(ra, rb);
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> count_;
};

}  // namespace basinseg
