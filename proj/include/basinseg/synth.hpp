#pragma once

#include <cstdint>
#include <vector>

#include "basinseg/graph.hpp"
#include "basinseg/watershed.hpp"

namespace basinseg {

/// Parameters of a synthetic labelled affinity volume.
///
/// Segments grow from random seeds with random step costs, which gives
/// irregular boundaries. Edges inside a segment draw from the interior
/// normal distribution, edges between segments from the boundary one; both
/// are clamped to [0,1]. Two noise sources model what makes real data hard:
/// organelles are small balls well inside a segment, walled off by boundary-like
/// disaffinities without being separate segments, and leaks replace a
/// fraction of boundary edges with interior draws.
struct SynthSpec {
  Shape shape{64, 64, 64};
  std::size_t blobs = 8;
  double interior_mean = 0.1;
  double interior_sigma = 0.05;
  double boundary_mean = 0.9;
  double boundary_sigma = 0.05;
  std::size_t organelles = 0;
  std::size_t organelle_radius_min = 1;
  std::size_t organelle_radius_max = 3;
  double leak_rate = 0.0;
  std::uint64_t seed = 0;

  /// The default benchmark volume: 64^3, 8 segments, 150 organelles.
  static SynthSpec benchmark(std::uint64_t seed);

  /// Throws InputError when a field is out of range.
  void validate() const;
};

struct SynthVolume {
  AffinityVolume affinity;
  std::vector<Label> ground_truth;  ///< labels 1..blobs, row-major
};

/// Deterministic for a given spec, on every platform.
SynthVolume synthesize(const SynthSpec& spec);

}  // namespace basinseg
