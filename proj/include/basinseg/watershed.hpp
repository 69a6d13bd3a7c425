#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "basinseg/graph.hpp"

namespace basinseg {

using Label = std::uint32_t;

/// Per-vertex labels with 0 reserved for background; labels 1..basin_count
/// are dense and each names a nonempty segment.
class Segmentation {
 public:
  Segmentation() = default;

  /// Throws InputError if some label in 1..max is unused.
  static Segmentation from_labels(std::vector<Label> labels);

  std::span<const Label> labels() const { return labels_; }
  Label label(VertexId v) const { return labels_[v]; }
  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t basin_count() const { return sizes_.empty() ? 0 : sizes_.size() - 1; }

  /// Indexed by label; entry 0 counts background vertices.
  std::span<const std::uint64_t> basin_sizes() const { return sizes_; }
  std::uint64_t basin_size(Label l) const { return sizes_[l]; }

  friend bool operator==(const Segmentation&, const Segmentation&) = default;

 private:
  std::vector<Label> labels_;
  std::vector<std::uint64_t> sizes_;
};

/// State of one undirected source edge inside the steepest descent graph.
/// `forward` points from edge.u to edge.v, `backward` from edge.v to edge.u.
enum class EdgeState : std::uint8_t { absent, forward, backward, bidirectional, removed };

namespace vertex_flag {
inline constexpr std::uint8_t plateau = 1;  ///< has a bidirectional edge
inline constexpr std::uint8_t corner = 2;   ///< plateau vertex with a strictly-outgoing edge
inline constexpr std::uint8_t saddle = 4;   ///< more than one strictly-outgoing edge
inline constexpr std::uint8_t minimal = 8;  ///< member of a locally minimal plateau
}  // namespace vertex_flag

/// Edge-state overlay on a DisaffinityGraph. Holds a non-owning reference:
/// the source graph must outlive the overlay.
///
/// The vertex flags describe the steepest descent graph as first built;
/// saddle resolution and plateau division only rewrite edge states.
class DescentGraph {
 public:
  enum class Stage : std::uint8_t { built, saddles_resolved, plateaus_divided };

  const DisaffinityGraph& graph() const { return *graph_; }
  Stage stage() const { return stage_; }

  std::span<const EdgeState> states() const { return states_; }
  EdgeState state(std::size_t edge) const { return states_[edge]; }

  std::span<const std::uint8_t> vertex_flags() const { return flags_; }
  bool is_plateau(VertexId v) const { return flags_[v] & vertex_flag::plateau; }
  bool is_corner(VertexId v) const { return flags_[v] & vertex_flag::corner; }
  bool is_saddle(VertexId v) const { return flags_[v] & vertex_flag::saddle; }
  bool is_minimal(VertexId v) const { return flags_[v] & vertex_flag::minimal; }

  /// True if edge `edge` is currently directed strictly out of `v`.
  bool points_out_of(std::size_t edge, VertexId v) const;

 private:
  friend DescentGraph build_descent_graph(const DisaffinityGraph& g);
  friend DescentGraph resolve_saddles(DescentGraph d);
  friend DescentGraph divide_plateaus(DescentGraph d);

  const DisaffinityGraph* graph_ = nullptr;
  Stage stage_ = Stage::built;
  std::vector<EdgeState> states_;
  std::vector<std::uint8_t> flags_;
};

/// Keeps, for every vertex, each incident edge of minimal weight, directed
/// out of that vertex (bidirectional when minimal for both endpoints).
/// Weight ties are exact float equality.
DescentGraph build_descent_graph(const DisaffinityGraph& g);

/// Each vertex keeps a single strictly-outgoing edge, the one whose target
/// has the lowest id. Bidirectional edges are left alone.
DescentGraph resolve_saddles(DescentGraph d);

/// Splits non-minimal plateaus by breadth-first search from all plateau
/// corners at once. Corners enter one FIFO queue in increasing id order;
/// a dequeued vertex scans its bidirectional edges in source-edge order.
/// An edge reaching an unvisited vertex is redirected toward the dequeued
/// vertex, an edge reaching a visited one is removed.
DescentGraph divide_plateaus(DescentGraph d);

/// Connected components of the remaining edges, numbered 1..k in order of
/// their smallest vertex id. Background vertices get 0.
Segmentation label_basins(const DescentGraph& d);

/// The full transform: preprocessing, descent graph, saddles, plateaus,
/// labels.
Segmentation watershed(const DisaffinityGraph& g, const PreprocessParams& p = {});

}  // namespace basinseg
