#pragma once

#include <span>
#include <string>
#include <vector>

#include "basinseg/agglomeration.hpp"
#include "basinseg/graph.hpp"
#include "basinseg/metrics.hpp"

namespace basinseg {

/// Parameter sweeps for comparing segmentation methods against ground truth.
struct BenchmarkConfig {
  PreprocessParams preprocess{0.01f, 0.9f};
  std::vector<double> size_grid;      ///< s0 for the size-dependent families
  std::vector<double> saliency_grid;  ///< thresholds for plain single linkage
  std::vector<double> fh_grid;        ///< k for both Felzenszwalb-Huttenlocher families
  SizeMeasure measure = SizeMeasure::voxels;
  UnlabeledPolicy policy = UnlabeledPolicy::singleton;

  /// s0 = 10^(i/4) for i in 4..24, saliency 0..1 in steps of 0.05,
  /// k = 10^(i/4) for i in -4..20.
  static BenchmarkConfig defaults();
};

/// Method names: slc-const, slc-linear, slc-square (omega-form functions),
/// slc-plain (saliency cut), fh-disaffinity, fh-basin.
struct BenchmarkRow {
  std::string method;
  double parameter;
  ScorePair scores;
};

/// Rows sorted by (method, parameter).
std::vector<BenchmarkRow> run_benchmark(const AffinityVolume& vol, std::span<const Label> ground_truth,
                                        const BenchmarkConfig& cfg);

/// `method,parameter,V_split,V_merge` with a header line.
std::string format_benchmark_csv(std::span<const BenchmarkRow> rows);

}  // namespace basinseg
