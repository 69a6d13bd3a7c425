#pragma once

#include <cstddef>
#include <vector>

#include "basinseg/graph.hpp"

namespace basinseg {

/// Brute-force basins of attraction of steepest descent dynamics, for
/// cross-checking the watershed transform on small graphs.
struct OracleBasins {
  /// Vertex sets of the regional minima, each sorted, ordered by smallest member.
  std::vector<std::vector<VertexId>> minima;
  /// For every vertex, indices into `minima` reachable by some steepest
  /// descent walk. Empty for background vertices.
  std::vector<std::vector<std::size_t>> reachable;
};

inline constexpr std::size_t kOracleMaxVertices = 16;

/// Enumerates walk reachability over the steepest descent relation. A
/// regional minimum is a vertex set closed under walks in which every
/// member reaches every other. Throws InputError above kOracleMaxVertices.
OracleBasins oracle_basins(const DisaffinityGraph& g);

}  // namespace basinseg
