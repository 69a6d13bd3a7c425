#include "basinseg/watershed.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "basinseg/union_find.hpp"

namespace basinseg {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

}  // namespace

Segmentation Segmentation::from_labels(std::vector<Label> labels) {
  Segmentation s;
  Label top = 0;
  for (Label l : labels) top = std::max(top, l);
  s.sizes_.assign(static_cast<std::size_t>(top) + 1, 0);
  for (Label l : labels) ++s.sizes_[l];
  for (std::size_t l = 1; l < s.sizes_.size(); ++l) {
    if (s.sizes_[l] == 0) throw InputError("label " + std::to_string(l) + " is unused");
  }
  s.labels_ = std::move(labels);
  return s;
}

bool DescentGraph::points_out_of(std::size_t edge, VertexId v) const {
  const Edge& e = graph_->edges()[edge];
  switch (states_[edge]) {
    case EdgeState::forward: return e.u == v;
    case EdgeState::backward: return e.v == v;
    default: return false;
  }
}

DescentGraph build_descent_graph(const DisaffinityGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InputError("graph has no vertices");
  const auto edges = g.edges();

  std::vector<Weight> lowest(n, std::numeric_limits<Weight>::infinity());
  for (const Edge& e : edges) {
    if (e.w < lowest[e.u]) lowest[e.u] = e.w;
    if (e.w < lowest[e.v]) lowest[e.v] = e.w;
  }

  DescentGraph d;
  d.graph_ = &g;
  d.states_.resize(edges.size());
  d.flags_.assign(n, 0);
  std::vector<std::uint8_t> out(n, 0);
  auto bump = [](std::uint8_t& c) { c = c < 2 ? c + 1 : 2; };

  DisjointSets plateaus(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const bool min_u = e.w == lowest[e.u];
    const bool min_v = e.w == lowest[e.v];
    EdgeState s = EdgeState::absent;
    if (min_u && min_v) {
      s = EdgeState::bidirectional;
      d.flags_[e.u] |= vertex_flag::plateau;
      d.flags_[e.v] |= vertex_flag::plateau;
      plateaus.unite(e.u, e.v);
    } else if (min_u) {
      s = EdgeState::forward;
      bump(out[e.u]);
    } else if (min_v) {
      s = EdgeState::backward;
      bump(out[e.v]);
    }
    d.states_[i] = s;
  }

  std::vector<std::uint8_t> root_has_corner(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (out[v] > 1) d.flags_[v] |= vertex_flag::saddle;
    if (out[v] > 0 && (d.flags_[v] & vertex_flag::plateau)) {
      d.flags_[v] |= vertex_flag::corner;
      root_has_corner[plateaus.find(v)] = 1;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (d.flags_[v] & vertex_flag::plateau) {
      if (!root_has_corner[plateaus.find(v)]) d.flags_[v] |= vertex_flag::minimal;
    } else if (lowest[v] == std::numeric_limits<Weight>::infinity() && !g.is_background(v)) {
      // isolated vertex: a one-vertex regional minimum
      d.flags_[v] |= vertex_flag::minimal;
    }
  }
  return d;
}

DescentGraph resolve_saddles(DescentGraph d) {
  if (d.stage_ != DescentGraph::Stage::built) {
    throw std::logic_error("resolve_saddles expects a freshly built descent graph");
  }
  const auto edges = d.graph_->edges();
  std::vector<std::uint32_t> keep(d.graph_->vertex_count(), kNone);

  for (std::size_t i = 0; i < edges.size(); ++i) {
    VertexId from, to;
    if (d.states_[i] == EdgeState::forward) {
      from = edges[i].u;
      to = edges[i].v;
    } else if (d.states_[i] == EdgeState::backward) {
      from = edges[i].v;
      to = edges[i].u;
    } else {
      continue;
    }
    if (keep[from] == kNone) {
      keep[from] = static_cast<std::uint32_t>(i);
      continue;
    }
    const Edge& cur = edges[keep[from]];
    const VertexId cur_to = cur.u == from ? cur.v : cur.u;
    if (to < cur_to) keep[from] = static_cast<std::uint32_t>(i);
  }

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeState s = d.states_[i];
    if (s == EdgeState::forward && keep[edges[i].u] != i) d.states_[i] = EdgeState::removed;
    if (s == EdgeState::backward && keep[edges[i].v] != i) d.states_[i] = EdgeState::removed;
  }
  d.stage_ = DescentGraph::Stage::saddles_resolved;
  return d;
}

DescentGraph divide_plateaus(DescentGraph d) {
  if (d.stage_ != DescentGraph::Stage::saddles_resolved) {
    throw std::logic_error("divide_plateaus expects resolved saddles");
  }
  const std::size_t n = d.graph_->vertex_count();
  const auto edges = d.graph_->edges();

  // bidirectional adjacency in CSR form, edge-index order per vertex
  std::vector<std::uint32_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (d.states_[i] != EdgeState::bidirectional) continue;
    ++offset[edges[i].u + 1];
    ++offset[edges[i].v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<std::uint32_t> adj(offset[n]);
  {
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (d.states_[i] != EdgeState::bidirectional) continue;
      adj[fill[edges[i].u]++] = static_cast<std::uint32_t>(i);
      adj[fill[edges[i].v]++] = static_cast<std::uint32_t>(i);
    }
  }

  std::vector<std::uint8_t> visited(n, 0);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < n; ++v) {
    if (d.flags_[v] & vertex_flag::corner) {
      visited[v] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    for (std::uint32_t k = offset[v]; k < offset[v + 1]; ++k) {
      const std::uint32_t i = adj[k];
      if (d.states_[i] != EdgeState::bidirectional) continue;
      const Edge& e = edges[i];
      const VertexId u = e.u == v ? e.v : e.u;
      if (visited[u]) {
        d.states_[i] = EdgeState::removed;
      } else {
        visited[u] = 1;
        queue.push_back(u);
        d.states_[i] = e.u == u ? EdgeState::forward : EdgeState::backward;
      }
    }
  }
  d.stage_ = DescentGraph::Stage::plateaus_divided;
  return d;
}

Segmentation label_basins(const DescentGraph& d) {
  if (d.stage() != DescentGraph::Stage::plateaus_divided) {
    throw std::logic_error("label_basins expects divided plateaus");
  }
  const DisaffinityGraph& g = d.graph();
  const std::size_t n = g.vertex_count();
  const auto edges = g.edges();

  DisjointSets components(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeState s = d.state(i);
    if (s == EdgeState::forward || s == EdgeState::backward || s == EdgeState::bidirectional) {
      components.unite(edges[i].u, edges[i].v);
    }
  }

  std::vector<Label> labels(n, 0);
  std::vector<Label> root_label(n, 0);
  Label next = 1;
  for (VertexId v = 0; v < n; ++v) {
    if (g.is_background(v)) continue;
    Label& l = root_label[components.find(v)];
    if (l == 0) l = next++;
    labels[v] = l;
  }
  return Segmentation::from_labels(std::move(labels));
}

Segmentation watershed(const DisaffinityGraph& g, const PreprocessParams& p) {
  auto run = [](const DisaffinityGraph& graph) {
    return label_basins(divide_plateaus(resolve_saddles(build_descent_graph(graph))));
  };
  if (!p.t_min && !p.t_max) return run(g);
  const DisaffinityGraph pre = preprocess(g, p);
  return run(pre);
}

}  // namespace basinseg
