#ifndef SCENEFST_DECODER_CONFIG_H_
#define SCENEFST_DECODER_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "scenefst/fst/shortest_path.h"
#include "scenefst/scene/walks.h"
#include "scenefst/stats/label_stats.h"

namespace scenefst {

enum class ModelKind { kFlat, kLearned };

enum class DependencyMode {
  kExact,         // segment-level sums, weight on the segment-closing arc
  kBoundaryPair,  // last cell of the previous segment x first cell of the next
};

struct DecodeConfig {
  int walk_count = 8;
  // Unset: exact search.
  std::optional<std::size_t> beam = 100;
  bool reorder = true;  // off: the row-major serpentine only
  ModelKind grouping = ModelKind::kLearned;
  ModelKind dependency = ModelKind::kLearned;
  ModelKind visual = ModelKind::kLearned;
  DependencyMode dependency_mode = DependencyMode::kBoundaryPair;
  SmoothingOptions smoothing;
  fst::TieBreak tie_break = fst::TieBreak::kDeterministic;
  std::uint64_t seed = 0;  // walk sampling and seeded tie-breaking
  // Divide each cell's visual likelihoods by their sum over labels.
  bool normalize_visual = false;
  WalkSamplerOptions walk_sampler;

  // Multipliers in (0, 1] on P(K), P(Pi) and every visual likelihood. Each
  // shifts all path weights by the same amount.
  double count_prior_scale = 1.0;
  double reorder_prior_scale = 1.0;
  double visual_scale = 1.0;

  int EffectiveWalkCount() const { return reorder ? walk_count : 1; }

  // Throws ConfigError for walk_count < 1, beam == 0, alpha < 0 or scales
  // outside (0, 1].
  void Validate() const;
};

std::string_view ToString(ModelKind kind);
std::string_view ToString(DependencyMode mode);
ModelKind ParseModelKind(std::string_view text);
DependencyMode ParseDependencyMode(std::string_view text);

}  // namespace scenefst

#endif  // SCENEFST_DECODER_CONFIG_H_
