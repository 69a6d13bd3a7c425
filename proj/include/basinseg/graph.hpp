#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace basinseg {

using VertexId = std::uint32_t;
using Weight = float;

/// Thrown for malformed input: bad shapes, bad weights, unparsable files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  VertexId u;
  VertexId v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Grid extent in (z, y, x) order.
struct Shape {
  std::size_t z = 0;
  std::size_t y = 0;
  std::size_t x = 0;

  std::size_t voxels() const { return z * y * x; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

enum class Axis : std::uint8_t { x = 0, y = 1, z = 2 };

/// Nearest-neighbour disaffinities on a 3D grid.
///
/// Entry (axis, z, y, x) is the disaffinity between voxel (z, y, x) and its
/// positive-direction neighbour along `axis`. Entries whose neighbour falls
/// outside the grid are stored (the file layout is dense) but never become
/// graph edges. Channel order is x, y, z.
class AffinityVolume {
 public:
  AffinityVolume() = default;
  AffinityVolume(Shape shape, std::vector<Weight> data);

  /// All-`fill` volume of the given shape.
  static AffinityVolume filled(Shape shape, Weight fill);

  const Shape& shape() const { return shape_; }
  std::span<const Weight> data() const { return data_; }

  Weight at(Axis axis, std::size_t z, std::size_t y, std::size_t x) const {
    return data_[index(axis, z, y, x)];
  }
  void set(Axis axis, std::size_t z, std::size_t y, std::size_t x, Weight w);

  std::size_t index(Axis axis, std::size_t z, std::size_t y, std::size_t x) const {
    return ((static_cast<std::size_t>(axis) * shape_.z + z) * shape_.y + y) * shape_.x + x;
  }

 private:
  Shape shape_;
  std::vector<Weight> data_;
};

/// Undirected edge-weighted graph. Vertex ids double as the ordering used
/// for every tie-break downstream.
///
/// Vertices can carry a background flag, set when T_max erasure strips
/// every incident edge. Background vertices never join a basin.
class DisaffinityGraph {
 public:
  DisaffinityGraph() = default;

  /// Validates ids, self-loops, weights and duplicate undirected edges.
  DisaffinityGraph(std::size_t vertex_count, std::vector<Edge> edges);

  /// Skips the duplicate check; callers guarantee the invariants hold.
  static DisaffinityGraph trusted(std::size_t vertex_count, std::vector<Edge> edges,
                                  std::vector<std::uint8_t> background = {});

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  bool is_background(VertexId v) const { return !background_.empty() && background_[v] != 0; }
  bool has_background() const;
  /// Empty when no vertex is flagged.
  std::span<const std::uint8_t> background_flags() const { return background_; }

  friend bool operator==(const DisaffinityGraph&, const DisaffinityGraph&) = default;

 private:
  friend DisaffinityGraph apply_tmin(DisaffinityGraph g, Weight t_min);
  friend DisaffinityGraph apply_tmax(DisaffinityGraph g, Weight t_max);

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> background_;
};

struct PreprocessParams {
  std::optional<Weight> t_min;
  std::optional<Weight> t_max;

  /// Throws InputError on negative, non-finite or inverted thresholds.
  void validate() const;
};

/// Row-major (z, then y, then x) voxel ids; one edge per in-range
/// neighbour pair per axis, emitted voxel by voxel in x, y, z order.
DisaffinityGraph edges_from_volume(const AffinityVolume& vol);

/// Inverse of edges_from_volume. Entries without an edge are set to `fill`.
/// Throws InputError if an edge does not join grid neighbours.
AffinityVolume volume_from_edges(const DisaffinityGraph& g, Shape shape, Weight fill = 1.0f);

/// Weights strictly below t_min become 0.
DisaffinityGraph apply_tmin(DisaffinityGraph g, Weight t_min);

/// Edges strictly above t_max are erased. Vertices that lose their last
/// edge are flagged background.
DisaffinityGraph apply_tmax(DisaffinityGraph g, Weight t_max);

/// T_max erasure first, then T_min replacement.
DisaffinityGraph preprocess(DisaffinityGraph g, const PreprocessParams& p);

/// Parses `u v w` lines; blank lines and `#` comments are skipped.
DisaffinityGraph parse_edge_list(std::string_view text);
std::string format_edge_list(const DisaffinityGraph& g);

/// Shortest decimal text that reads back to the same float.
std::string format_weight(Weight w);

}  // namespace basinseg
