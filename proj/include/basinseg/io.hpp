#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "basinseg/graph.hpp"
#include "basinseg/watershed.hpp"

namespace basinseg::io {

// Raw arrays are little-endian and C-ordered. Each has a JSON sidecar at
// `<path>.json`: {"shape":[...],"dtype":"float32"|"uint32","order":"C"}.

std::filesystem::path sidecar_path(const std::filesystem::path& raw);

/// Shape (3, Z, Y, X), channels x, y, z.
AffinityVolume read_volume(const std::filesystem::path& path);
void write_volume(const std::filesystem::path& path, const AffinityVolume& vol);

/// Labels plus the grid they live on, if any.
struct LabelArray {
  std::optional<Shape> shape;
  std::vector<Label> labels;
};

/// Raw uint32 (Z, Y, X) when a sidecar exists, otherwise `vertex label` text.
LabelArray read_labels(const std::filesystem::path& path);
void write_labels_raw(const std::filesystem::path& path, Shape shape, std::span<const Label> labels);
void write_labels_text(const std::filesystem::path& path, std::span<const Label> labels);
/// Raw when `shape` is set, text otherwise.
void write_labels(const std::filesystem::path& path, const std::optional<Shape>& shape,
                  std::span<const Label> labels);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace basinseg::io
