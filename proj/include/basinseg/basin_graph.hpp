#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "basinseg/graph.hpp"
#include "basinseg/watershed.hpp"

namespace basinseg {

using BasinId = Label;

struct BasinEdge {
  BasinId a;  ///< always the smaller id
  BasinId b;
  Weight saliency;

  friend bool operator==(const BasinEdge&, const BasinEdge&) = default;
};

/// Maps basin id to cluster id; entry 0 (background) maps to 0.
using BasinPartition = std::vector<Label>;

/// One vertex per watershed basin (ids 1..basin_count), one edge per
/// adjacent basin pair weighted by saliency, the minimal disaffinity of any
/// source edge straddling the pair. Edges are kept sorted by (a, b).
class BasinGraph {
 public:
  BasinGraph() = default;

  /// `sizes` is indexed by basin id; its entry 0 is ignored. Edge endpoints
  /// are normalised to a < b, then validated and sorted.
  BasinGraph(std::vector<std::uint64_t> sizes, std::vector<BasinEdge> edges);

  std::size_t basin_count() const { return sizes_.empty() ? 0 : sizes_.size() - 1; }
  std::span<const std::uint64_t> sizes() const { return sizes_; }
  std::uint64_t size(BasinId b) const { return sizes_[b]; }
  std::span<const BasinEdge> edges() const { return edges_; }

  friend bool operator==(const BasinGraph&, const BasinGraph&) = default;

 private:
  std::vector<std::uint64_t> sizes_;
  std::vector<BasinEdge> edges_;
};

/// Single pass over the source edges; edges touching background are skipped.
BasinGraph build_basin_graph(const DisaffinityGraph& g, const Segmentation& seg);

/// Joins every basin pair whose saliency is strictly below t. Clusters are
/// numbered 1..m in order of their smallest basin.
BasinPartition merge_below(const BasinGraph& bg, Weight t);

/// Relabels each vertex with the cluster of its basin.
Segmentation apply_partition(const Segmentation& seg, const BasinPartition& partition);

/// `# size <basin> <count>` records followed by `a b saliency` lines.
std::string format_basin_graph(const BasinGraph& bg);
BasinGraph parse_basin_graph(std::string_view text);

}  // namespace basinseg
