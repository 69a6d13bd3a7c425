#include "basinseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <unordered_set>

namespace basinseg {

namespace {

// std distributions are implementation-defined; these are not, so a seed
// yields the same volume with any standard library.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * n); }

  double normal(double mean, double sigma) {
    if (has_spare_) {
      has_spare_ = false;
      return mean + sigma * spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return mean + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

Weight clamp01(double v) { return static_cast<Weight>(std::clamp(v, 0.0, 1.0)); }

struct Front {
  double time;
  std::uint32_t voxel;
  Label label;

  bool operator>(const Front& o) const {
    return time != o.time ? time > o.time : voxel > o.voxel;
  }
};

}  // namespace

SynthSpec SynthSpec::benchmark(std::uint64_t seed) {
  SynthSpec spec;
  spec.organelles = 150;
  spec.seed = seed;
  return spec;
}

void SynthSpec::validate() const {
  if (shape.voxels() == 0) throw InputError("synthetic shape has an empty dimension");
  if (shape.voxels() > 0xffffffffu) throw InputError("synthetic shape too large");
  if (blobs == 0 || blobs > shape.voxels()) throw InputError("blob count must be in 1..voxels");
  for (double m : {interior_mean, boundary_mean}) {
    if (!(m >= 0.0 && m <= 1.0)) throw InputError("disaffinity means must lie in [0,1]");
  }
  if (!(interior_mean < boundary_mean)) throw InputError("interior mean must be below boundary mean");
  for (double s : {interior_sigma, boundary_sigma}) {
    if (!(s >= 0.0 && std::isfinite(s))) throw InputError("sigmas must be finite and >= 0");
  }
  if (!(leak_rate >= 0.0 && leak_rate <= 1.0)) throw InputError("leak rate must lie in [0,1]");
  if (organelle_radius_min > organelle_radius_max) throw InputError("organelle radius range inverted");
}

SynthVolume synthesize(const SynthSpec& spec) {
  spec.validate();
  const Shape s = spec.shape;
  const std::size_t n = s.voxels();
  const std::size_t plane = s.y * s.x;
  Sampler rng(spec.seed);

  // seeded region growth with random step costs
  std::vector<Label> gt(n, 0);
  std::priority_queue<Front, std::vector<Front>, std::greater<>> front;
  {
    std::unordered_set<std::uint64_t> used;
    while (used.size() < spec.blobs) {
      const std::uint64_t v = rng.below(n);
      if (used.insert(v).second) {
        front.push({0.0, static_cast<std::uint32_t>(v), static_cast<Label>(used.size())});
      }
    }
  }
  while (!front.empty()) {
    const Front f = front.top();
    front.pop();
    if (gt[f.voxel] != 0) continue;
    gt[f.voxel] = f.label;
    const std::size_t z = f.voxel / plane;
    const std::size_t y = (f.voxel % plane) / s.x;
    const std::size_t x = f.voxel % s.x;
    auto push = [&](std::size_t nb) {
      if (gt[nb] == 0) front.push({f.time + 0.5 + rng.uniform(), static_cast<std::uint32_t>(nb), f.label});
    };
    if (x > 0) push(f.voxel - 1);
    if (x + 1 < s.x) push(f.voxel + 1);
    if (y > 0) push(f.voxel - s.x);
    if (y + 1 < s.y) push(f.voxel + s.x);
    if (z > 0) push(f.voxel - plane);
    if (z + 1 < s.z) push(f.voxel + plane);
  }

  // organelles: balls lying wholly inside one segment and the volume;
  // candidates that do not fit are redrawn, up to a bounded number of tries
  std::vector<std::uint32_t> pocket(n, 0);
  const std::size_t span = spec.organelle_radius_max - spec.organelle_radius_min + 1;
  std::uint32_t placed = 0;
  std::vector<std::size_t> ball;
  for (std::size_t tries = 0; placed < spec.organelles && tries < 100 * spec.organelles; ++tries) {
    const std::size_t c = rng.below(n);
    const auto r = static_cast<std::ptrdiff_t>(spec.organelle_radius_min + rng.below(span));
    const auto cz = static_cast<std::ptrdiff_t>(c / plane);
    const auto cy = static_cast<std::ptrdiff_t>((c % plane) / s.x);
    const auto cx = static_cast<std::ptrdiff_t>(c % s.x);
    const std::ptrdiff_t rr = r + 1;  // one voxel of margin keeps the wall off the segment boundary
    if (cz < rr || cy < rr || cx < rr || cz + rr >= static_cast<std::ptrdiff_t>(s.z) ||
        cy + rr >= static_cast<std::ptrdiff_t>(s.y) || cx + rr >= static_cast<std::ptrdiff_t>(s.x)) {
      continue;
    }
    ball.clear();
    bool fits = true;
    for (std::ptrdiff_t dz = -rr; dz <= rr && fits; ++dz) {
      for (std::ptrdiff_t dy = -rr; dy <= rr && fits; ++dy) {
        for (std::ptrdiff_t dx = -rr; dx <= rr; ++dx) {
          const std::ptrdiff_t d2 = dz * dz + dy * dy + dx * dx;
          if (d2 > rr * rr) continue;
          const auto v = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(c) + dz * static_cast<std::ptrdiff_t>(plane) +
                                                  dy * static_cast<std::ptrdiff_t>(s.x) + dx);
          if (gt[v] != gt[c] || pocket[v] != 0) {
            fits = false;
            break;
          }
          if (d2 <= r * r) ball.push_back(v);
        }
      }
    }
    if (!fits) continue;
    ++placed;
    for (std::size_t v : ball) pocket[v] = placed;
  }

  AffinityVolume vol = AffinityVolume::filled(s, 1.0f);
  auto draw = [&](std::size_t a, std::size_t b) {
    if (gt[a] != gt[b]) {
      if (spec.leak_rate > 0.0 && rng.uniform() < spec.leak_rate) {
        return clamp01(rng.normal(spec.interior_mean, spec.interior_sigma));
      }
      return clamp01(rng.normal(spec.boundary_mean, spec.boundary_sigma));
    }
    if (pocket[a] != pocket[b]) return clamp01(rng.normal(spec.boundary_mean, spec.boundary_sigma));
    return clamp01(rng.normal(spec.interior_mean, spec.interior_sigma));
  };
  std::size_t v = 0;
  for (std::size_t z = 0; z < s.z; ++z) {
    for (std::size_t y = 0; y < s.y; ++y) {
      for (std::size_t x = 0; x < s.x; ++x, ++v) {
        if (x + 1 < s.x) vol.set(Axis::x, z, y, x, draw(v, v + 1));
        if (y + 1 < s.y) vol.set(Axis::y, z, y, x, draw(v, v + s.x));
        if (z + 1 < s.z) vol.set(Axis::z, z, y, x, draw(v, v + plane));
      }
    }
  }
  return {std::move(vol), std::move(gt)};
}

}  // namespace basinseg
