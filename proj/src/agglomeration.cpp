#include "basinseg/agglomeration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "basinseg/union_find.hpp"

namespace basinseg {

namespace {

// Shared by flat cuts and merge replays: numbers the sets of `sets` over
// ids first..n-1 in order of their smallest member.
std::vector<Label> number_components(DisjointSets& sets, std::size_t first) {
  const std::size_t n = sets.size();
  std::vector<Label> out(n, 0);
  std::vector<Label> root_label(n, 0);
  Label next = 1;
  for (std::size_t v = first; v < n; ++v) {
    Label& l = root_label[sets.find(static_cast<std::uint32_t>(v))];
    if (l == 0) l = next++;
    out[v] = l;
  }
  return out;
}

}  // namespace

SizeMeasure parse_size_measure(std::string_view text) {
  if (text == "voxels") return SizeMeasure::voxels;
  if (text == "basins") return SizeMeasure::basins;
  throw InputError("size measure must be voxels or basins, got `" + std::string(text) + "`");
}

EdgeOrder sort_edges(const BasinGraph& bg) {
  EdgeOrder order(bg.edges().begin(), bg.edges().end());
  std::sort(order.begin(), order.end(), [](const BasinEdge& x, const BasinEdge& y) {
    if (x.saliency != y.saliency) return x.saliency < y.saliency;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return order;
}

Dendrogram cluster(const BasinGraph& bg, const EdgeOrder& order, const ThresholdFn& tf,
                   SizeMeasure measure) {
  tf.validate();
  const std::size_t k = bg.basin_count();
  for (const BasinEdge& e : order) {
    if (e.a == 0 || e.b == 0 || e.a > k || e.b > k || e.a == e.b) {
      throw InputError("edge order refers to basins outside the graph");
    }
  }

  // Per-basin state in one record so a root lookup touches one cache line.
  // Linking by the size field with path halving keeps finds short.
  struct Node {
    std::uint32_t parent;
    BasinId smallest;
    std::uint64_t size;
  };
  std::vector<Node> node(k + 1);
  for (BasinId b = 0; b <= k; ++b) {
    node[b] = {b, b, b == 0 || measure == SizeMeasure::basins ? 1 : bg.size(b)};
  }
  auto find = [&](std::uint32_t x) {
    while (node[x].parent != x) {
      node[x].parent = node[node[x].parent].parent;
      x = node[x].parent;
    }
    return x;
  };

  // Saliency order is random with respect to basin ids, so on large graphs
  // most lookups miss the cache. Fetch the records a few edges ahead.
  constexpr std::size_t ahead = 16;
  std::vector<Merge> log;
  log.reserve(std::min(k, order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i + ahead < order.size()) {
      __builtin_prefetch(&node[order[i + ahead].a]);
      __builtin_prefetch(&node[order[i + ahead].b]);
    }
    const BasinEdge& e = order[i];
    std::uint32_t ra = find(e.a);
    std::uint32_t rb = find(e.b);
    if (ra == rb) continue;
    const std::uint64_t min_size = std::min(node[ra].size, node[rb].size);
    if (!merges(tf, e.saliency, static_cast<double>(min_size))) continue;

    if (node[ra].size < node[rb].size) std::swap(ra, rb);
    const std::uint64_t joined = node[ra].size + node[rb].size;
    const BasinId lo = std::min(node[ra].smallest, node[rb].smallest);
    const BasinId hi = std::max(node[ra].smallest, node[rb].smallest);
    node[rb].parent = ra;
    node[ra].size = joined;
    node[ra].smallest = lo;
    log.push_back({lo, hi, e.saliency, joined});
  }
  return Dendrogram(k, std::move(log));
}

Dendrogram cluster(const BasinGraph& bg, const ThresholdFn& tf, SizeMeasure measure) {
  return cluster(bg, sort_edges(bg), tf, measure);
}

EdgeOrder minimum_spanning_edges(const BasinGraph& bg, const EdgeOrder& order) {
  DisjointSets sets(bg.basin_count() + 1);
  EdgeOrder tree;
  for (const BasinEdge& e : order) {
    if (sets.unite(e.a, e.b)) tree.push_back(e);
  }
  return tree;
}

Dendrogram cluster_mst(const BasinGraph& bg, const ThresholdFn& tf, SizeMeasure measure) {
  return cluster(bg, minimum_spanning_edges(bg, sort_edges(bg)), tf, measure);
}

Cut parse_cut(std::string_view text) {
  auto fail = [&] { return InputError("cut must be `level:<k>` or a saliency, got `" + std::string(text) + "`"); };
  if (text.starts_with("level:")) {
    const std::string_view num = text.substr(6);
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
    if (num.empty() || ec != std::errc{} || ptr != num.data() + num.size()) throw fail();
    return LevelCut{k};
  }
  Weight t = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(t) || t < 0) {
    throw fail();
  }
  return SaliencyCut{t};
}

BasinPartition flat_cut(const Dendrogram& dg, const Cut& cut) {
  const auto merges = dg.merges();
  std::size_t replay = merges.size();
  if (const auto* level = std::get_if<LevelCut>(&cut)) {
    if (level->merges > merges.size()) {
      throw InputError("cut level " + std::to_string(level->merges) + " exceeds " +
                       std::to_string(merges.size()) + " merges");
    }
    replay = level->merges;
  } else {
    const Weight t = std::get<SaliencyCut>(cut).threshold;
    replay = 0;
    while (replay < merges.size() && merges[replay].saliency < t) ++replay;
  }

  DisjointSets sets(dg.basin_count() + 1);
  for (std::size_t i = 0; i < replay; ++i) sets.unite(merges[i].a, merges[i].b);
  return number_components(sets, 1);
}

std::vector<Label> fh_cluster(std::size_t vertex_count, std::span<const Edge> edges, double k,
                              std::span<const std::uint64_t> sizes) {
  if (!(k >= 0.0)) throw InputError("fh scale parameter must be >= 0");
  if (!sizes.empty() && sizes.size() != vertex_count) {
    throw InputError("fh sizes must have one entry per vertex");
  }
  std::vector<std::uint32_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::uint32_t{0});
  std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
    const Edge& x = edges[i];
    const Edge& y = edges[j];
    if (x.w != y.w) return x.w < y.w;
    const auto xl = std::min(x.u, x.v), yl = std::min(y.u, y.v);
    if (xl != yl) return xl < yl;
    return std::max(x.u, x.v) < std::max(y.u, y.v);
  });

  DisjointSets sets(vertex_count);
  std::vector<double> internal(vertex_count, 0.0);
  std::vector<double> size(vertex_count, 1.0);
  if (!sizes.empty()) {
    for (std::size_t v = 0; v < vertex_count; ++v) size[v] = static_cast<double>(sizes[v]);
  }
  auto slack = [&](std::uint32_t r) {
    return size[r] > 0 ? internal[r] + k / size[r] : std::numeric_limits<double>::infinity();
  };
  for (std::uint32_t idx : order) {
    const Edge& e = edges[idx];
    const std::uint32_t ra = sets.find(e.u);
    const std::uint32_t rb = sets.find(e.v);
    if (ra == rb) continue;
    if (e.w > std::min(slack(ra), slack(rb))) continue;
    const double joined = size[ra] + size[rb];
    const std::uint32_t root = sets.link(ra, rb);
    size[root] = joined;
    internal[root] = e.w;
  }
  return number_components(sets, 0);
}

std::vector<Label> fh_cluster(const DisaffinityGraph& g, double k) {
  std::vector<Label> labels = fh_cluster(g.vertex_count(), g.edges(), k);
  if (!g.has_background()) return labels;
  // renumber without the background vertices
  std::vector<Label> remap(labels.size() + 1, 0);
  Label next = 1;
  for (VertexId v = 0; v < labels.size(); ++v) {
    if (g.is_background(v)) {
      labels[v] = 0;
      continue;
    }
    Label& l = remap[labels[v]];
    if (l == 0) l = next++;
    labels[v] = l;
  }
  return labels;
}

BasinPartition fh_cluster(const BasinGraph& bg, double k) {
  std::vector<Edge> edges;
  edges.reserve(bg.edges().size());
  for (const BasinEdge& e : bg.edges()) edges.push_back({e.a, e.b, e.saliency});
  // slot 0 is an isolated placeholder; labels shift down by one to free 0
  BasinPartition out = fh_cluster(bg.basin_count() + 1, edges, k, bg.sizes());
  for (Label& l : out) l = l - 1;
  return out;
}

std::string format_dendrogram(const Dendrogram& dg) {
  std::string out = "# basins " + std::to_string(dg.basin_count()) + "\n";
  for (const Merge& m : dg.merges()) {
    out += std::to_string(m.a) + ' ' + std::to_string(m.b) + ' ' + format_weight(m.saliency) + ' ' +
           std::to_string(m.new_size) + '\n';
  }
  return out;
}

}  // namespace basinseg
