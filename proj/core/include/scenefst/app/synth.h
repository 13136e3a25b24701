#ifndef SCENEFST_APP_SYNTH_H_
#define SCENEFST_APP_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "scenefst/scene/grid.h"

namespace scenefst {

// Synthetic beach scenes: horizontal sky / sea / sand bands with a sun
// disc inside the sky band. Features are Dirichlet draws from per-class
// concentration vectors.
struct SynthSpec {
  int rows = 20;
  int cols = 20;
  // Order: sky, sea, sand, sun. Layout roles follow this order.
  std::vector<std::string> labels = {"sky", "sea", "sand", "sun"};
  std::size_t dim = 16;
  // One vector of length `dim` per label; empty selects DefaultConcentrations.
  std::vector<std::vector<double>> concentrations;
  double band_jitter = 2.0;    // rows of random shift per band boundary
  double max_tilt = 0.15;      // boundary slope, rows per column
  double sun_radius_min = 2.5;
  double sun_radius_max = 4.0;
  double label_noise = 0.0;    // probability of relabeling a cell at random
  std::uint64_t seed = 0;
  int count = 1;

  // Throws InputError on an unusable spec.
  void Validate() const;
};

// Per-class concentrations over `dim` bins. Sky and sea share most of their
// mass; sand and sun sit on separate bins. `strength` scales every vector:
// larger values mean less feature noise.
std::vector<std::vector<double>> DefaultConcentrations(std::size_t dim, double strength = 3.0);

// Scene `index` of the spec's sequence; depends only on (spec, index).
SuperpixelGrid GenerateScene(const SynthSpec& spec, int index);
std::vector<SuperpixelGrid> GenerateScenes(const SynthSpec& spec);

// Writes scene_0000, scene_0001, ... under `out_dir`; returns their paths.
std::vector<std::filesystem::path> WriteSynthScenes(const SynthSpec& spec,
                                                    const std::filesystem::path& out_dir);

}  // namespace scenefst

#endif  // SCENEFST_APP_SYNTH_H_
