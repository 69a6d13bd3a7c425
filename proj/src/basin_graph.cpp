#include "basinseg/basin_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "basinseg/union_find.hpp"

namespace basinseg {

BasinGraph::BasinGraph(std::vector<std::uint64_t> sizes, std::vector<BasinEdge> edges)
    : sizes_(std::move(sizes)), edges_(std::move(edges)) {
  if (sizes_.empty()) sizes_.push_back(0);
  sizes_[0] = 0;
  const std::size_t k = basin_count();
  for (std::size_t b = 1; b <= k; ++b) {
    if (sizes_[b] == 0) throw InputError("basin " + std::to_string(b) + " has size 0");
  }
  for (BasinEdge& e : edges_) {
    if (e.a > e.b) std::swap(e.a, e.b);
    if (e.a == 0 || e.b > k) throw InputError("basin edge endpoint out of range");
    if (e.a == e.b) throw InputError("basin self-edge on " + std::to_string(e.a));
    if (!std::isfinite(e.saliency) || e.saliency < 0.0f) {
      throw InputError("saliency must be finite and non-negative");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const BasinEdge& x, const BasinEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].a == edges_[i - 1].a && edges_[i].b == edges_[i - 1].b) {
      throw InputError("duplicate basin edge " + std::to_string(edges_[i].a) + " " +
                       std::to_string(edges_[i].b));
    }
  }
}

BasinGraph build_basin_graph(const DisaffinityGraph& g, const Segmentation& seg) {
  if (seg.vertex_count() != g.vertex_count()) {
    throw InputError("segmentation covers " + std::to_string(seg.vertex_count()) +
                     " vertices, graph has " + std::to_string(g.vertex_count()));
  }
  std::unordered_map<std::uint64_t, Weight> lowest;
  for (const Edge& e : g.edges()) {
    BasinId a = seg.label(e.u);
    BasinId b = seg.label(e.v);
    if (a == b || a == 0 || b == 0) continue;
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto [it, fresh] = lowest.try_emplace(key, e.w);
    if (!fresh && e.w < it->second) it->second = e.w;
  }

  std::vector<BasinEdge> edges;
  edges.reserve(lowest.size());
  for (const auto& [key, w] : lowest) {
    edges.push_back({static_cast<BasinId>(key >> 32), static_cast<BasinId>(key & 0xffffffffu), w});
  }
  const auto sizes = seg.basin_sizes();
  return BasinGraph(std::vector<std::uint64_t>(sizes.begin(), sizes.end()), std::move(edges));
}

BasinPartition merge_below(const BasinGraph& bg, Weight t) {
  const std::size_t k = bg.basin_count();
  DisjointSets sets(k + 1);
  for (const BasinEdge& e : bg.edges()) {
    if (e.saliency < t) sets.unite(e.a, e.b);
  }
  BasinPartition out(k + 1, 0);
  std::vector<Label> root_label(k + 1, 0);
  Label next = 1;
  for (BasinId b = 1; b <= k; ++b) {
    Label& l = root_label[sets.find(b)];
    if (l == 0) l = next++;
    out[b] = l;
  }
  return out;
}

Segmentation apply_partition(const Segmentation& seg, const BasinPartition& partition) {
  if (partition.size() != seg.basin_count() + 1) {
    throw InputError("partition covers " + std::to_string(partition.size() - 1) +
                     " basins, segmentation has " + std::to_string(seg.basin_count()));
  }
  std::vector<Label> labels(seg.labels().begin(), seg.labels().end());
  for (Label& l : labels) l = partition[l];
  return Segmentation::from_labels(std::move(labels));
}

std::string format_basin_graph(const BasinGraph& bg) {
  std::string out;
  for (BasinId b = 1; b <= bg.basin_count(); ++b) {
    out += "# size " + std::to_string(b) + ' ' + std::to_string(bg.size(b)) + '\n';
  }
  for (const BasinEdge& e : bg.edges()) {
    out += std::to_string(e.a) + ' ' + std::to_string(e.b) + ' ' + format_weight(e.saliency) + '\n';
  }
  return out;
}

BasinGraph parse_basin_graph(std::string_view text) {
  std::vector<std::uint64_t> sizes(1, 0);
  std::vector<std::uint8_t> has_size(1, 0);
  std::vector<BasinEdge> edges;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    return InputError("basin graph line " + std::to_string(line_no) + ": " + why);
  };
  auto parse_uint = [&](const std::string& tok) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw fail("bad integer `" + tok + "`");
    return v;
  };

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tok[4];
    int count = 0;
    while (count < 4 && fields >> tok[count]) ++count;
    if (count == 0) continue;
    if (tok[0][0] == '#') {
      if (tok[0] == "#" && count == 4 && tok[1] == "size") {
        const std::uint64_t b = parse_uint(tok[2]);
        if (b == 0 || b > 0xffffffffu) throw fail("basin id out of range");
        if (b >= sizes.size()) {
          sizes.resize(b + 1, 0);
          has_size.resize(b + 1, 0);
        }
        if (has_size[b]) throw fail("repeated size record");
        sizes[b] = parse_uint(tok[3]);
        has_size[b] = 1;
      }
      continue;
    }
    if (count != 3) throw fail("expected `a b saliency`");
    const std::uint64_t a = parse_uint(tok[0]);
    const std::uint64_t b = parse_uint(tok[1]);
    if (a > 0xffffffffu || b > 0xffffffffu) throw fail("basin id out of range");
    Weight w = 0;
    auto [ptr, ec] = std::from_chars(tok[2].data(), tok[2].data() + tok[2].size(), w);
    if (ec != std::errc{} || ptr != tok[2].data() + tok[2].size()) {
      throw fail("bad saliency `" + tok[2] + "`");
    }
    edges.push_back({static_cast<BasinId>(a), static_cast<BasinId>(b), w});
  }
  for (std::size_t b = 1; b < sizes.size(); ++b) {
    if (!has_size[b]) throw InputError("basin graph lacks a size record for basin " + std::to_string(b));
  }
  return BasinGraph(std::move(sizes), std::move(edges));
}

}  // namespace basinseg
