#include "basinseg/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <unordered_map>

#include "basinseg/graph.hpp"

namespace basinseg {

namespace {

std::uint64_t checked_square_add(std::uint64_t acc, std::uint64_t n) {
  if (n > 0xffffffffu) throw InputError("contingency counts too large for exact scoring");
  const std::uint64_t sq = n * n;
  if (acc > std::numeric_limits<std::uint64_t>::max() - sq) {
    throw InputError("contingency sums overflow");
  }
  return acc + sq;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, ptr);
}

}  // namespace

UnlabeledPolicy parse_unlabeled_policy(std::string_view text) {
  if (text == "drop") return UnlabeledPolicy::drop;
  if (text == "singleton") return UnlabeledPolicy::singleton;
  throw InputError("unlabeled policy must be drop or singleton, got `" + std::string(text) + "`");
}

ContingencyTable ContingencyTable::from_cells(std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  ContingencyTable t;
  for (const Cell& c : cells) {
    if (c.count == 0) continue;
    if (!t.cells_.empty() && t.cells_.back().row == c.row && t.cells_.back().col == c.col) {
      t.cells_.back().count += c.count;
    } else {
      t.cells_.push_back(c);
    }
  }
  if (t.cells_.empty()) throw InputError("contingency table is empty");

  std::unordered_map<Label, std::uint64_t> col_sums;
  for (const Cell& c : t.cells_) {
    if (t.rows_.empty() || t.rows_.back().first != c.row) t.rows_.emplace_back(c.row, 0);
    t.rows_.back().second += c.count;
    col_sums[c.col] += c.count;
    t.total_ += c.count;
    t.sq_cells_ = checked_square_add(t.sq_cells_, c.count);
  }
  t.cols_.assign(col_sums.begin(), col_sums.end());
  std::sort(t.cols_.begin(), t.cols_.end());
  for (const auto& [row, n] : t.rows_) t.sq_rows_ = checked_square_add(t.sq_rows_, n);
  for (const auto& [col, n] : t.cols_) t.sq_cols_ = checked_square_add(t.sq_cols_, n);
  return t;
}

std::string ContingencyTable::to_csv() const {
  std::string out = "proposed,ground_truth,count\n";
  for (const Cell& c : cells_) {
    out += std::to_string(c.row) + ',' + std::to_string(c.col) + ',' + std::to_string(c.count) + '\n';
  }
  return out;
}

ContingencyTable contingency(std::span<const Label> proposed, std::span<const Label> ground_truth,
                             UnlabeledPolicy policy) {
  if (proposed.size() != ground_truth.size()) {
    throw InputError("segmentations differ in size: " + std::to_string(proposed.size()) + " vs " +
                     std::to_string(ground_truth.size()));
  }
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::vector<ContingencyTable::Cell> cells;
  for (std::size_t i = 0; i < proposed.size(); ++i) {
    const Label gt = ground_truth[i];
    if (gt == 0) continue;
    const Label p = proposed[i];
    if (p == 0) {
      if (policy == UnlabeledPolicy::singleton) {
        cells.push_back({ContingencyTable::kSingletonRowBase + i, gt, 1});
      }
      continue;
    }
    ++counts[(static_cast<std::uint64_t>(p) << 32) | gt];
  }
  if (counts.empty() && cells.empty()) {
    throw InputError("no ground-truth foreground voxels to score");
  }
  cells.reserve(cells.size() + counts.size());
  for (const auto& [key, n] : counts) {
    cells.push_back({key >> 32, static_cast<Label>(key & 0xffffffffu), n});
  }
  return ContingencyTable::from_cells(std::move(cells));
}

ScorePair split_merge_scores(const ContingencyTable& ct) {
  const double cells = static_cast<double>(ct.sum_sq_cells());
  return {cells / static_cast<double>(ct.sum_sq_cols()), cells / static_cast<double>(ct.sum_sq_rows())};
}

std::string format_scores(const ScorePair& s, std::uint64_t total) {
  return "V_split=" + format_double(s.v_split) + " V_merge=" + format_double(s.v_merge) +
         " N=" + std::to_string(total);
}

}  // namespace basinseg
