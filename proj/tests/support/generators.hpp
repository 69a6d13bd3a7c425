#pragma once

// Seeded random inputs for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "basinseg/basin_graph.hpp"
#include "basinseg/graph.hpp"
#include "basinseg/threshold.hpp"

namespace testgen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [lo, hi]
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin(double p = 0.5) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

// Weights drawn from a few levels so ties (plateaus) are common.
inline basinseg::Weight tied_weight(Rng& rng, int levels) {
  return static_cast<basinseg::Weight>(rng.between(0, static_cast<std::uint64_t>(levels))) /
         static_cast<basinseg::Weight>(levels);
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> random_pairs(Rng& rng, std::size_t n,
                                                                         std::size_t max_edges) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) all.emplace_back(u, v);
  }
  for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.between(0, i - 1)]);
  all.resize(std::min(all.size(), max_edges));
  // random endpoint order exercises normalisation in the code under test
  for (auto& [u, v] : all) {
    if (rng.coin()) std::swap(u, v);
  }
  return all;
}

inline basinseg::DisaffinityGraph random_graph(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  const std::size_t n = rng.between(1, max_vertices);
  const int levels = static_cast<int>(rng.between(1, 6));
  std::vector<basinseg::Edge> edges;
  for (auto [u, v] : random_pairs(rng, n, rng.between(0, max_edges))) {
    edges.push_back({u, v, tied_weight(rng, levels)});
  }
  return basinseg::DisaffinityGraph(n, std::move(edges));
}

inline basinseg::BasinGraph random_basin_graph(Rng& rng, std::size_t max_basins) {
  const std::size_t n = rng.between(1, max_basins);
  std::vector<std::uint64_t> sizes(n + 1, 0);
  for (std::size_t b = 1; b <= n; ++b) sizes[b] = rng.between(1, rng.coin(0.2) ? 2000 : 120);
  const int levels = static_cast<int>(rng.between(2, 20));
  std::vector<basinseg::BasinEdge> edges;
  const std::size_t max_edges = rng.between(0, 3 * n);
  // shift by one: basin ids start at 1
  for (auto [u, v] : random_pairs(rng, n, max_edges)) edges.push_back({u + 1, v + 1, tied_weight(rng, levels)});
  return basinseg::BasinGraph(std::move(sizes), std::move(edges));
}

}  // namespace testgen
