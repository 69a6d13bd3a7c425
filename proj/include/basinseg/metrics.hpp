#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "basinseg/watershed.hpp"

namespace basinseg {

/// What to do with voxels the proposal leaves unlabelled (label 0) inside
/// the ground-truth foreground.
enum class UnlabeledPolicy { drop, singleton };

UnlabeledPolicy parse_unlabeled_policy(std::string_view text);

/// Overlap counts between a proposed and a ground-truth segmentation,
/// restricted to ground-truth foreground.
///
/// Rows are proposed segments. Under the singleton policy every unlabelled
/// voxel becomes its own row with id kSingletonRowBase + voxel index.
class ContingencyTable {
 public:
  static constexpr std::uint64_t kSingletonRowBase = std::uint64_t{1} << 32;

  struct Cell {
    std::uint64_t row;
    Label col;
    std::uint64_t count;

    friend bool operator==(const Cell&, const Cell&) = default;
  };

  /// Accumulates cells with equal (row, col); zero counts are dropped.
  /// Throws InputError when the table ends up empty.
  static ContingencyTable from_cells(std::vector<Cell> cells);

  std::span<const Cell> cells() const { return cells_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t row_count() const { return rows_.size(); }
  std::uint64_t col_count() const { return cols_.size(); }

  /// Σ n_ij², Σ_i s_i², Σ_j t_j² in counts (not yet divided by N²).
  std::uint64_t sum_sq_cells() const { return sq_cells_; }
  std::uint64_t sum_sq_rows() const { return sq_rows_; }
  std::uint64_t sum_sq_cols() const { return sq_cols_; }

  /// `proposed,ground_truth,count` with a header line.
  std::string to_csv() const;

 private:
  std::vector<Cell> cells_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows_;
  std::vector<std::pair<Label, std::uint64_t>> cols_;
  std::uint64_t total_ = 0;
  std::uint64_t sq_cells_ = 0;
  std::uint64_t sq_rows_ = 0;
  std::uint64_t sq_cols_ = 0;
};

/// Throws InputError if the label arrays differ in length or the ground
/// truth has no foreground.
ContingencyTable contingency(std::span<const Label> proposed, std::span<const Label> ground_truth,
                             UnlabeledPolicy policy = UnlabeledPolicy::singleton);

struct ScorePair {
  double v_split = 0.0;
  double v_merge = 0.0;
};

/// V_split = Σp²/Σt² and V_merge = Σp²/Σs²; both in (0, 1], higher is better.
ScorePair split_merge_scores(const ContingencyTable& ct);

/// `V_split=<v> V_merge=<v> N=<n>`
std::string format_scores(const ScorePair& s, std::uint64_t total);

}  // namespace basinseg
