#include "scenefst/app/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "scenefst/errors.h"
#include "scenefst/scene/scene_io.h"

namespace scenefst {
namespace {

enum Role : std::size_t { kSky = 0, kSea = 1, kSand = 2, kSun = 3 };

std::mt19937_64 SceneRng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

Histogram Dirichlet(const std::vector<double>& alpha, std::mt19937_64& rng) {
  Histogram h(alpha.size());
  double total = 0.0;
  for (std::size_t d = 0; d < alpha.size(); ++d) {
    std::gamma_distribution<double> gamma(alpha[d], 1.0);
    h[d] = gamma(rng);
    total += h[d];
  }
  if (total > 0.0) {
    for (double& v : h) v /= total;
  }
  NormalizeL1(h);
  return h;
}

}  // namespace

void SynthSpec::Validate() const {
  if (rows < 4 || cols < 1) throw InputError("synthetic scenes need at least 4 rows and 1 column");
  if (labels.size() != 4) throw InputError("synthetic layout needs exactly four labels");
  if (dim == 0) throw InputError("feature dimension must be positive");
  if (!concentrations.empty()) {
    if (concentrations.size() != labels.size()) {
      throw InputError("need one concentration vector per label");
    }
    for (const auto& c : concentrations) {
      if (c.size() != dim) throw InputError("concentration vector length must equal dim");
      for (double a : c) {
        if (!(a > 0.0) || !std::isfinite(a)) throw InputError("concentrations must be positive");
      }
    }
  }
  if (band_jitter < 0.0 || max_tilt < 0.0) throw InputError("jitter and tilt must be >= 0");
  if (!(sun_radius_min > 0.0) || sun_radius_max < sun_radius_min) {
    throw InputError("sun radius range is invalid");
  }
  if (!(label_noise >= 0.0 && label_noise <= 1.0)) {
    throw InputError("label noise must lie in [0, 1]");
  }
  if (count < 0) throw InputError("image count must be non-negative");
}

std::vector<std::vector<double>> DefaultConcentrations(std::size_t dim, double strength) {
  std::vector<std::vector<double>> c(4, std::vector<double>(dim, 0.0));
  for (std::size_t d = 0; d < dim; ++d) {
    const double x = (static_cast<double>(d) + 0.5) / static_cast<double>(dim);
    const auto bump = [x](double center, double width) {
      const double z = (x - center) / width;
      return std::exp(-0.5 * z * z);
    };
    c[kSky][d] = 0.15 + bump(0.22, 0.14);
    c[kSea][d] = 0.15 + bump(0.28, 0.14);
    c[kSand][d] = 0.15 + bump(0.62, 0.12);
    c[kSun][d] = 0.15 + bump(0.88, 0.08);
  }
  for (auto& v : c) {
    double total = 0.0;
    for (double a : v) total += a;
    for (double& a : v) a *= strength * static_cast<double>(dim) / total;
  }
  return c;
}

SuperpixelGrid GenerateScene(const SynthSpec& spec, int index) {
  spec.Validate();
  const auto conc = spec.concentrations.empty() ? DefaultConcentrations(spec.dim)
                                                : spec.concentrations;
  std::mt19937_64 rng = SceneRng(spec.seed, index);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  const double rows = spec.rows;
  const double cols = spec.cols;
  const double horizon = rows * 0.45 + uniform(-spec.band_jitter, spec.band_jitter);
  const double shore = rows * 0.72 + uniform(-spec.band_jitter, spec.band_jitter);
  const double horizon_tilt = uniform(-spec.max_tilt, spec.max_tilt);
  const double shore_tilt = uniform(-spec.max_tilt, spec.max_tilt);
  const auto boundary = [&](double base, double tilt, int c) {
    return base + tilt * (static_cast<double>(c) - (cols - 1) / 2.0);
  };

  const double radius = uniform(spec.sun_radius_min, spec.sun_radius_max);
  const double top_sky = std::max(1.0, horizon - std::abs(horizon_tilt) * cols / 2.0);
  const double sun_row = uniform(0.0, std::max(0.0, top_sky - 1.0));
  const double sun_col = uniform(0.0, cols - 1.0);

  std::vector<std::size_t> roles(static_cast<std::size_t>(spec.rows * spec.cols));
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      // Row 0 is always sky and the bottom row always sand.
      const double h = std::clamp(boundary(horizon, horizon_tilt, c), 1.0, rows - 2.0);
      const double s = std::clamp(boundary(shore, shore_tilt, c), h + 1.0, rows - 1.0);
      std::size_t role = r < h ? kSky : r < s ? kSea : kSand;
      const double dr = r - sun_row;
      const double dc = c - sun_col;
      if (role == kSky && dr * dr + dc * dc <= radius * radius) role = kSun;
      roles[static_cast<std::size_t>(r * spec.cols + c)] = role;
    }
  }
  // The disc always covers the cell nearest its center.
  const auto center_r = static_cast<int>(std::lround(sun_row));
  const auto center_c = static_cast<int>(std::lround(sun_col));
  auto& center = roles[static_cast<std::size_t>(center_r * spec.cols + center_c)];
  if (center == kSky) center = kSun;

  std::vector<Histogram> features;
  std::vector<std::string> labels;
  features.reserve(roles.size());
  labels.reserve(roles.size());
  std::uniform_int_distribution<std::size_t> other(0, spec.labels.size() - 2);
  for (std::size_t role : roles) {
    features.push_back(Dirichlet(conc[role], rng));
    std::size_t shown = role;
    if (spec.label_noise > 0.0 && unit(rng) < spec.label_noise) {
      shown = other(rng);
      if (shown >= role) ++shown;
    }
    labels.push_back(spec.labels[shown]);
  }
  char name[32];
  std::snprintf(name, sizeof(name), "scene_%04d", index);
  return SuperpixelGrid(spec.rows, spec.cols, std::move(features), std::move(labels), name);
}

std::vector<SuperpixelGrid> GenerateScenes(const SynthSpec& spec) {
  spec.Validate();
  std::vector<SuperpixelGrid> scenes;
  scenes.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) scenes.push_back(GenerateScene(spec, i));
  return scenes;
}

std::vector<std::filesystem::path> WriteSynthScenes(const SynthSpec& spec,
                                                    const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> dirs;
  for (const SuperpixelGrid& scene : GenerateScenes(spec)) {
    const auto dir = out_dir / scene.name();
    WriteScene(scene, dir);
    dirs.push_back(dir);
  }
  return dirs;
}

}  // namespace scenefst
