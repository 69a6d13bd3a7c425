#include "basinseg/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace basinseg {

namespace {

bool valid_weight(Weight w) { return std::isfinite(w) && w >= 0.0f; }

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

AffinityVolume::AffinityVolume(Shape shape, std::vector<Weight> data)
    : shape_(shape), data_(std::move(data)) {
  if (shape_.z == 0 || shape_.y == 0 || shape_.x == 0) {
    throw InputError("affinity volume has an empty dimension");
  }
  if (data_.size() != 3 * shape_.voxels()) {
    throw InputError("affinity volume holds " + std::to_string(data_.size()) +
                     " values, shape requires " + std::to_string(3 * shape_.voxels()));
  }
  for (Weight w : data_) {
    if (!std::isfinite(w) || w < 0.0f || w > 1.0f) {
      throw InputError("affinity volume value outside [0,1]");
    }
  }
}

AffinityVolume AffinityVolume::filled(Shape shape, Weight fill) {
  return AffinityVolume(shape, std::vector<Weight>(3 * shape.voxels(), fill));
}

void AffinityVolume::set(Axis axis, std::size_t z, std::size_t y, std::size_t x, Weight w) {
  if (!std::isfinite(w) || w < 0.0f || w > 1.0f) {
    throw InputError("affinity value outside [0,1]");
  }
  data_[index(axis, z, y, x)] = w;
}

DisaffinityGraph::DisaffinityGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ > std::numeric_limits<VertexId>::max()) {
    throw InputError("too many vertices");
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw InputError("edge endpoint out of range");
    }
    if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(e.u));
    if (!valid_weight(e.w)) throw InputError("edge weight must be finite and non-negative");
    if (!seen.insert(pair_key(e.u, e.v)).second) {
      throw InputError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
  }
}

DisaffinityGraph DisaffinityGraph::trusted(std::size_t vertex_count, std::vector<Edge> edges,
                                           std::vector<std::uint8_t> background) {
  DisaffinityGraph g;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(edges);
  g.background_ = std::move(background);
  return g;
}

bool DisaffinityGraph::has_background() const {
  return std::any_of(background_.begin(), background_.end(), [](std::uint8_t b) { return b != 0; });
}

void PreprocessParams::validate() const {
  if (t_min && (!std::isfinite(*t_min) || *t_min < 0.0f)) {
    throw InputError("t_min must be finite and non-negative");
  }
  if (t_max && (!std::isfinite(*t_max) || *t_max < 0.0f)) {
    throw InputError("t_max must be finite and non-negative");
  }
  if (t_min && t_max && *t_min > *t_max) throw InputError("t_min exceeds t_max");
}

DisaffinityGraph edges_from_volume(const AffinityVolume& vol) {
  const Shape s = vol.shape();
  if (s.voxels() == 0) throw InputError("empty volume");
  if (s.voxels() > std::numeric_limits<VertexId>::max()) throw InputError("volume too large");

  std::vector<Edge> edges;
  edges.reserve(3 * s.voxels() - (s.y * s.x + s.z * s.x + s.z * s.y));
  const std::size_t plane = s.y * s.x;
  VertexId id = 0;
  for (std::size_t z = 0; z < s.z; ++z) {
    for (std::size_t y = 0; y < s.y; ++y) {
      for (std::size_t x = 0; x < s.x; ++x, ++id) {
        if (x + 1 < s.x) edges.push_back({id, id + 1, vol.at(Axis::x, z, y, x)});
        if (y + 1 < s.y) {
          edges.push_back({id, static_cast<VertexId>(id + s.x), vol.at(Axis::y, z, y, x)});
        }
        if (z + 1 < s.z) {
          edges.push_back({id, static_cast<VertexId>(id + plane), vol.at(Axis::z, z, y, x)});
        }
      }
    }
  }
  return DisaffinityGraph::trusted(s.voxels(), std::move(edges));
}

AffinityVolume volume_from_edges(const DisaffinityGraph& g, Shape shape, Weight fill) {
  if (g.vertex_count() != shape.voxels()) throw InputError("vertex count does not match shape");
  AffinityVolume vol = AffinityVolume::filled(shape, fill);
  const std::size_t plane = shape.y * shape.x;
  for (const Edge& e : g.edges()) {
    const std::size_t lo = std::min(e.u, e.v);
    const std::size_t hi = std::max(e.u, e.v);
    const std::size_t z = lo / plane;
    const std::size_t y = (lo % plane) / shape.x;
    const std::size_t x = lo % shape.x;
    Axis axis;
    if (hi == lo + 1 && x + 1 < shape.x) {
      axis = Axis::x;
    } else if (hi == lo + shape.x && y + 1 < shape.y) {
      axis = Axis::y;
    } else if (hi == lo + plane && z + 1 < shape.z) {
      axis = Axis::z;
    } else {
      throw InputError("edge does not join grid neighbours");
    }
    vol.set(axis, z, y, x, e.w);
  }
  return vol;
}

DisaffinityGraph apply_tmin(DisaffinityGraph g, Weight t_min) {
  for (Edge& e : g.edges_) {
    if (e.w < t_min) e.w = 0.0f;
  }
  return g;
}

DisaffinityGraph apply_tmax(DisaffinityGraph g, Weight t_max) {
  const std::size_t n = g.vertex_count_;
  std::vector<std::uint8_t> had_edge(n, 0);
  std::vector<std::uint8_t> keeps_edge(n, 0);
  std::size_t kept = 0;
  for (const Edge& e : g.edges_) {
    had_edge[e.u] = had_edge[e.v] = 1;
    if (e.w > t_max) continue;
    keeps_edge[e.u] = keeps_edge[e.v] = 1;
    g.edges_[kept++] = e;
  }
  g.edges_.resize(kept);

  for (std::size_t v = 0; v < n; ++v) {
    if (had_edge[v] && !keeps_edge[v]) {
      if (g.background_.empty()) g.background_.assign(n, 0);
      g.background_[v] = 1;
    }
  }
  return g;
}

DisaffinityGraph preprocess(DisaffinityGraph g, const PreprocessParams& p) {
  p.validate();
  if (p.t_max) g = apply_tmax(std::move(g), *p.t_max);
  if (p.t_min) g = apply_tmin(std::move(g), *p.t_min);
  return g;
}

DisaffinityGraph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t vertex_count = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::istringstream in{std::string(line)};
    std::string tok[4];
    int count = 0;
    while (count < 4 && in >> tok[count]) ++count;
    if (count == 0) continue;
    auto fail = [&](const std::string& why) {
      return InputError("edge list line " + std::to_string(line_no) + ": " + why);
    };
    if (count != 3) throw fail("expected `u v w`");

    std::uint64_t ids[2];
    for (int i = 0; i < 2; ++i) {
      const char* first = tok[i].data();
      const char* last = first + tok[i].size();
      auto [ptr, ec] = std::from_chars(first, last, ids[i]);
      if (ec != std::errc{} || ptr != last || ids[i] >= std::numeric_limits<VertexId>::max()) {
        throw fail("bad vertex id `" + tok[i] + "`");
      }
    }
    Weight w = 0;
    {
      const char* first = tok[2].data();
      const char* last = first + tok[2].size();
      auto [ptr, ec] = std::from_chars(first, last, w);
      if (ec != std::errc{} || ptr != last) throw fail("bad weight `" + tok[2] + "`");
    }
    if (!std::isfinite(w)) throw fail("non-finite weight");
    if (w < 0.0f) throw fail("negative weight");
    if (ids[0] == ids[1]) throw fail("self-loop");
    edges.push_back({static_cast<VertexId>(ids[0]), static_cast<VertexId>(ids[1]), w});
    vertex_count = std::max<std::size_t>(vertex_count, std::max(ids[0], ids[1]) + 1);
  }
  return DisaffinityGraph(vertex_count, std::move(edges));
}

std::string format_weight(Weight w) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, ptr);
}

std::string format_edge_list(const DisaffinityGraph& g) {
  std::string out;
  out.reserve(g.edge_count() * 16);
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += ' ';
    out += format_weight(e.w);
    out += '\n';
  }
  return out;
}

}  // namespace basinseg
