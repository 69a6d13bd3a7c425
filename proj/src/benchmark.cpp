#include "basinseg/benchmark.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "basinseg/basin_graph.hpp"
#include "basinseg/watershed.hpp"

namespace basinseg {

namespace {

std::string format_number(double v, bool fixed) {
  char buf[48];
  auto [ptr, ec] = fixed ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6)
                         : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> log_grid(int from, int to) {
  std::vector<double> g;
  for (int i = from; i <= to; ++i) g.push_back(std::pow(10.0, i / 4.0));
  return g;
}

}  // namespace

BenchmarkConfig BenchmarkConfig::defaults() {
  BenchmarkConfig cfg;
  cfg.size_grid = log_grid(4, 24);
  for (int i = 0; i <= 20; ++i) cfg.saliency_grid.push_back(i * 0.05);
  cfg.fh_grid = log_grid(-4, 20);
  return cfg;
}

std::vector<BenchmarkRow> run_benchmark(const AffinityVolume& vol, std::span<const Label> ground_truth,
                                        const BenchmarkConfig& cfg) {
  if (ground_truth.size() != vol.shape().voxels()) {
    throw InputError("ground truth does not match the volume shape");
  }
  const DisaffinityGraph raw = edges_from_volume(vol);
  const DisaffinityGraph pre = preprocess(raw, cfg.preprocess);
  const Segmentation basins = watershed(pre);
  const BasinGraph bg = build_basin_graph(pre, basins);
  const EdgeOrder order = sort_edges(bg);

  std::vector<BenchmarkRow> rows;
  auto score = [&](std::string method, double parameter, std::span<const Label> labels) {
    const ScorePair s = split_merge_scores(contingency(labels, ground_truth, cfg.policy));
    rows.push_back({std::move(method), parameter, s});
  };
  auto score_partition = [&](std::string method, double parameter, const BasinPartition& p) {
    score(std::move(method), parameter, apply_partition(basins, p).labels());
  };

  const std::pair<const char*, ThresholdForm> families[] = {
      {"slc-const", ThresholdForm::constant},
      {"slc-linear", ThresholdForm::linear},
      {"slc-square", ThresholdForm::square},
  };
  for (const auto& [name, form] : families) {
    for (double s0 : cfg.size_grid) {
      const ThresholdFn tf{ThresholdKind::omega, form, s0};
      const Dendrogram dg = cluster(bg, order, tf, cfg.measure);
      score_partition(name, s0, flat_cut(dg, LevelCut{dg.merges().size()}));
    }
  }
  for (double t : cfg.saliency_grid) {
    score_partition("slc-plain", t, merge_below(bg, static_cast<Weight>(t)));
  }
  for (double k : cfg.fh_grid) {
    score("fh-disaffinity", k, fh_cluster(raw, k));
    score_partition("fh-basin", k, fh_cluster(bg, k));
  }

  std::stable_sort(rows.begin(), rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
    return a.method != b.method ? a.method < b.method : a.parameter < b.parameter;
  });
  return rows;
}

std::string format_benchmark_csv(std::span<const BenchmarkRow> rows) {
  std::string out = "method,parameter,V_split,V_merge\n";
  for (const BenchmarkRow& r : rows) {
    out += r.method + ',' + format_number(r.parameter, false) + ',' +
           format_number(r.scores.v_split, true) + ',' + format_number(r.scores.v_merge, true) + '\n';
  }
  return out;
}

}  // namespace basinseg
