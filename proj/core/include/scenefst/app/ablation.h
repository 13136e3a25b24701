#ifndef SCENEFST_APP_ABLATION_H_
#define SCENEFST_APP_ABLATION_H_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "scenefst/app/evaluation.h"
#include "scenefst/decoder/config.h"
#include "scenefst/decoder/problem.h"

namespace scenefst {

// One row of the reordering/grouping x dependency x visual grid.
struct AblationLine {
  int line = 0;
  std::string reordering;  // "Yes/No", "No", "Yes + flat", "Yes + learned"
  DecodeConfig config;
};

// The ten settings derived from `base`. Line 1 (everything flat) uses seeded
// tie-breaking; "No" lines decode the row-major serpentine only with flat
// grouping weights.
std::vector<AblationLine> AblationLines(const DecodeConfig& base);

// Scene `index` of a batch decodes with seed base.seed + index, so seeded
// tie-breaking draws independently per scene.
DecodeConfig ForScene(const DecodeConfig& base, std::size_t index);

struct AblationRow {
  AblationLine setting;
  EvalReport report;
};

// Decodes every labeled scene under each requested line and scores it.
// Empty `lines` runs all ten.
std::vector<AblationRow> RunAblation(std::span<const SuperpixelGrid> scenes, const Models& models,
                                     const DecodeConfig& base, std::span<const int> lines = {},
                                     std::size_t threads = 1);

// line, reordering, dependency, visual, FAR, FRR, EER.
void WriteAblation(std::span<const AblationRow> rows, std::ostream& os);

}  // namespace scenefst

#endif  // SCENEFST_APP_ABLATION_H_
