#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "basinseg/basin_graph.hpp"
#include "basinseg/threshold.hpp"

namespace basinseg {

/// How S(C) counts a cluster: summed basin voxel counts, or number of basins.
enum class SizeMeasure { voxels, basins };

SizeMeasure parse_size_measure(std::string_view text);

struct Merge {
  BasinId a;  ///< smallest basin of the first cluster (a < b)
  BasinId b;  ///< smallest basin of the second cluster
  Weight saliency;
  std::uint64_t new_size;

  friend bool operator==(const Merge&, const Merge&) = default;
};

/// Merge log of a hierarchical clustering over basins 1..basin_count.
/// Level k of the hierarchy is the partition after the first k merges.
class Dendrogram {
 public:
  Dendrogram() = default;
  Dendrogram(std::size_t basin_count, std::vector<Merge> merges)
      : basin_count_(basin_count), merges_(std::move(merges)) {}

  std::size_t basin_count() const { return basin_count_; }
  std::span<const Merge> merges() const { return merges_; }

  friend bool operator==(const Dendrogram&, const Dendrogram&) = default;

 private:
  std::size_t basin_count_ = 0;
  std::vector<Merge> merges_;
};

/// Basin graph edges copied in visiting order, so the sweep reads them
/// sequentially.
using EdgeOrder = std::vector<BasinEdge>;

/// Non-decreasing saliency; ties broken by (a, b).
EdgeOrder sort_edges(const BasinGraph& bg);

/// Size-dependent single linkage. Edges are visited once in `order`; the
/// clusters at the two ends merge when they differ and the predicate fails.
/// Cluster saliency is the weight of the edge being visited, which is the
/// minimum over the pair because edges arrive in non-decreasing order.
Dendrogram cluster(const BasinGraph& bg, const EdgeOrder& order, const ThresholdFn& tf,
                   SizeMeasure measure = SizeMeasure::voxels);
Dendrogram cluster(const BasinGraph& bg, const ThresholdFn& tf,
                   SizeMeasure measure = SizeMeasure::voxels);

/// Kruskal over `order`: the minimum spanning forest, still in that order.
EdgeOrder minimum_spanning_edges(const BasinGraph& bg, const EdgeOrder& order);

/// Same clustering restricted to minimum spanning forest edges.
Dendrogram cluster_mst(const BasinGraph& bg, const ThresholdFn& tf,
                       SizeMeasure measure = SizeMeasure::voxels);

struct LevelCut {
  std::size_t merges;
};
struct SaliencyCut {
  Weight threshold;  ///< replays merges with saliency strictly below this
};
using Cut = std::variant<LevelCut, SaliencyCut>;

/// `level:<k>` or a bare saliency.
Cut parse_cut(std::string_view text);

/// Clusters numbered 1..m by smallest member basin. Throws InputError when a
/// level exceeds the number of merges.
BasinPartition flat_cut(const Dendrogram& dg, const Cut& cut);

/// Felzenszwalb-Huttenlocher merging over any edge list: edges in
/// non-decreasing order, components join when
/// w <= min(Int(C1) + k/|C1|, Int(C2) + k/|C2|).
/// |C| sums `sizes` when given (one entry per vertex), else counts vertices.
/// Components are labelled 1..m by smallest vertex id.
std::vector<Label> fh_cluster(std::size_t vertex_count, std::span<const Edge> edges, double k,
                              std::span<const std::uint64_t> sizes = {});

/// Per-voxel labels; background vertices keep label 0.
std::vector<Label> fh_cluster(const DisaffinityGraph& g, double k);

/// Basin-graph variant with |C| measured in voxels.
BasinPartition fh_cluster(const BasinGraph& bg, double k);

/// `a b saliency new_size` per merge, in merge order.
std::string format_dendrogram(const Dendrogram& dg);

}  // namespace basinseg
