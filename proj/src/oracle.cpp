#include "basinseg/oracle.hpp"

#include <bit>
#include <cstdint>

namespace basinseg {

OracleBasins oracle_basins(const DisaffinityGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kOracleMaxVertices) {
    throw InputError("oracle is limited to " + std::to_string(kOracleMaxVertices) + " vertices");
  }
  using Mask = std::uint32_t;

  // step[v]: vertices one locally minimal edge away from v
  std::vector<Mask> step(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    for (const Edge& e : g.edges()) {
      if (e.u != v && e.v != v) continue;
      bool lowest = true;
      for (const Edge& f : g.edges()) {
        if ((f.u == v || f.v == v) && f.w < e.w) {
          lowest = false;
          break;
        }
      }
      if (lowest) step[v] |= Mask{1} << (e.u == v ? e.v : e.u);
    }
  }

  // reach[v]: every vertex some walk from v visits, v included
  std::vector<Mask> reach(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    Mask seen = Mask{1} << v;
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      Mask fresh = step[x] & ~seen;
      seen |= fresh;
      while (fresh) {
        stack.push_back(static_cast<VertexId>(std::countr_zero(fresh)));
        fresh &= fresh - 1;
      }
    }
    reach[v] = seen;
  }

  OracleBasins out;
  out.reachable.resize(n);
  std::vector<int> minimum_of(n, -1);
  for (VertexId v = 0; v < n; ++v) {
    if (g.is_background(v) || minimum_of[v] >= 0) continue;
    bool closed = true;
    Mask members = 0;
    for (VertexId u = 0; u < n; ++u) {
      if (!(reach[v] >> u & 1)) continue;
      if (reach[u] >> v & 1) {
        members |= Mask{1} << u;
      } else {
        closed = false;
      }
    }
    if (!closed) continue;
    std::vector<VertexId> set;
    for (VertexId u = 0; u < n; ++u) {
      if (members >> u & 1) {
        set.push_back(u);
        minimum_of[u] = static_cast<int>(out.minima.size());
      }
    }
    out.minima.push_back(std::move(set));
  }

  for (VertexId v = 0; v < n; ++v) {
    if (g.is_background(v)) continue;
    for (std::size_t m = 0; m < out.minima.size(); ++m) {
      if (reach[v] >> out.minima[m].front() & 1) out.reachable[v].push_back(m);
    }
  }
  return out;
}

}  // namespace basinseg
