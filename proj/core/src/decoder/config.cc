#include "scenefst/decoder/config.h"

#include <string>

#include "scenefst/errors.h"

namespace scenefst {
namespace {

void CheckScale(double value, const char* what) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw ConfigError(std::string(what) + " must lie in (0, 1]");
  }
}

}  // namespace

void DecodeConfig::Validate() const {
  if (walk_count < 1) throw ConfigError("walk count must be at least 1");
  if (beam && *beam == 0) throw ConfigError("beam width must be positive");
  if (!(smoothing.alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
  CheckScale(count_prior_scale, "count prior scale");
  CheckScale(reorder_prior_scale, "reordering prior scale");
  CheckScale(visual_scale, "visual scale");
}

std::string_view ToString(ModelKind kind) {
  return kind == ModelKind::kFlat ? "flat" : "learned";
}

std::string_view ToString(DependencyMode mode) {
  return mode == DependencyMode::kExact ? "exact" : "boundary-pair";
}

ModelKind ParseModelKind(std::string_view text) {
  if (text == "flat") return ModelKind::kFlat;
  if (text == "learned") return ModelKind::kLearned;
  throw ConfigError("unknown model kind '" + std::string(text) + "' (expected flat|learned)");
}

DependencyMode ParseDependencyMode(std::string_view text) {
  if (text == "exact") return DependencyMode::kExact;
  if (text == "boundary-pair") return DependencyMode::kBoundaryPair;
  throw ConfigError("unknown dependency mode '" + std::string(text) +
                    "' (expected exact|boundary-pair)");
}

}  // namespace scenefst
