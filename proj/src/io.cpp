#include "basinseg/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace basinseg::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename T>
void to_little_endian(std::vector<T>& values) {
  static_assert(sizeof(T) == 4);
  if constexpr (std::endian::native == std::endian::big) {
    for (T& v : values) {
      std::uint32_t bits;
      std::memcpy(&bits, &v, 4);
      bits = __builtin_bswap32(bits);
      std::memcpy(&v, &bits, 4);
    }
  }
}

std::vector<std::size_t> read_header(const std::filesystem::path& raw, std::string_view dtype) {
  const std::filesystem::path side = sidecar_path(raw);
  json header;
  try {
    header = json::parse(read_text(side));
  } catch (const json::exception& e) {
    throw InputError("bad header " + side.string() + ": " + e.what());
  }
  if (!header.is_object() || !header.contains("shape") || !header["shape"].is_array()) {
    throw InputError("header " + side.string() + " lacks a shape");
  }
  if (header.value("dtype", "") != dtype) {
    throw InputError("header " + side.string() + " dtype must be " + std::string(dtype));
  }
  if (header.value("order", "C") != "C") throw InputError("only C order is supported");
  std::vector<std::size_t> shape;
  for (const auto& d : header["shape"]) {
    if (!d.is_number_unsigned()) throw InputError("header " + side.string() + " has a bad shape");
    shape.push_back(d.get<std::size_t>());
  }
  return shape;
}

void write_header(const std::filesystem::path& raw, const std::vector<std::size_t>& shape,
                  std::string_view dtype) {
  ordered_json header;
  header["shape"] = shape;
  header["dtype"] = dtype;
  header["order"] = "C";
  write_text(sidecar_path(raw), header.dump() + "\n");
}

template <typename T>
std::vector<T> read_raw(const std::filesystem::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes != count * sizeof(T)) {
    throw InputError(path.string() + " holds " + std::to_string(bytes) + " bytes, header implies " +
                     std::to_string(count * sizeof(T)));
  }
  in.seekg(0);
  std::vector<T> values(count);
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw InputError("short read on " + path.string());
  to_little_endian(values);
  return values;
}

template <typename T>
void write_raw(const std::filesystem::path& path, std::vector<T> values) {
  to_little_endian(values);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(T)));
  if (!out) throw InputError("write failed on " + path.string());
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& raw) {
  return std::filesystem::path(raw.string() + ".json");
}

AffinityVolume read_volume(const std::filesystem::path& path) {
  const auto dims = read_header(path, "float32");
  if (dims.size() != 4 || dims[0] != 3) {
    throw InputError("volume header shape must be [3,Z,Y,X]");
  }
  const Shape shape{dims[1], dims[2], dims[3]};
  return AffinityVolume(shape, read_raw<float>(path, 3 * shape.voxels()));
}

void write_volume(const std::filesystem::path& path, const AffinityVolume& vol) {
  const Shape s = vol.shape();
  write_raw(path, std::vector<float>(vol.data().begin(), vol.data().end()));
  write_header(path, {3, s.z, s.y, s.x}, "float32");
}

LabelArray read_labels(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw InputError("no such file: " + path.string());
  LabelArray out;
  if (std::filesystem::exists(sidecar_path(path))) {
    const auto dims = read_header(path, "uint32");
    if (dims.size() != 3) throw InputError("label header shape must be [Z,Y,X]");
    out.shape = Shape{dims[0], dims[1], dims[2]};
    out.labels = read_raw<Label>(path, out.shape->voxels());
    return out;
  }

  std::istringstream in(read_text(path));
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::pair<std::uint64_t, Label>> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::uint64_t v = 0;
    std::uint64_t l = 0;
    if (!(fields >> v)) continue;
    std::string extra;
    if (!(fields >> l) || (fields >> extra) || l > 0xffffffffu) {
      throw InputError(path.string() + " line " + std::to_string(line_no) + ": expected `vertex label`");
    }
    entries.emplace_back(v, static_cast<Label>(l));
  }
  std::vector<std::uint8_t> seen(entries.size(), 0);
  out.labels.assign(entries.size(), 0);
  for (const auto& [v, l] : entries) {
    if (v >= entries.size() || seen[v]) {
      throw InputError(path.string() + ": vertices must be 0..n-1, each listed once");
    }
    seen[v] = 1;
    out.labels[v] = l;
  }
  return out;
}

void write_labels_raw(const std::filesystem::path& path, Shape shape, std::span<const Label> labels) {
  if (labels.size() != shape.voxels()) throw InputError("label count does not match shape");
  write_raw(path, std::vector<Label>(labels.begin(), labels.end()));
  write_header(path, {shape.z, shape.y, shape.x}, "uint32");
}

void write_labels_text(const std::filesystem::path& path, std::span<const Label> labels) {
  std::string out;
  out.reserve(labels.size() * 8);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    out += std::to_string(v);
    out += ' ';
    out += std::to_string(labels[v]);
    out += '\n';
  }
  write_text(path, out);
}

void write_labels(const std::filesystem::path& path, const std::optional<Shape>& shape,
                  std::span<const Label> labels) {
  if (shape) {
    write_labels_raw(path, *shape, labels);
  } else {
    write_labels_text(path, labels);
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("write failed on " + path.string());
}

}  // namespace basinseg::io
