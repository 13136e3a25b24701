#ifndef SCENEFST_STATS_MODEL_IO_H_
#define SCENEFST_STATS_MODEL_IO_H_

#include <filesystem>
#include <iosfwd>
#include <memory>

#include "scenefst/stats/label_stats.h"
#include "scenefst/stats/visual.h"

namespace scenefst {

// Trained models as persisted by `scenefst train`.
struct SceneModel {
  std::shared_ptr<const LabelStats> stats;
  std::shared_ptr<const LinearScorer> scorer;
  double alpha = 0.0;
  double lambda = 0.0;
};

// Text format, tab separated:
//   scenefst-model 1
//   labels <count> <label>...
//   geometry <rows> <cols>
//   dim <D>
//   alpha <a>
//   lambda <l>
//   images <N>
//   u <label> <cell> <count>                     (non-zero counts)
//   b <label> <label'> <cell> <cell'> <count>    (non-zero counts)
//   w <label> <D reals> <bias>
// Reals use the shortest round-trip form, so reloading is bit-exact.
void WriteModel(const SceneModel& model, std::ostream& os);
SceneModel ReadModel(std::istream& is);

void SaveModel(const SceneModel& model, const std::filesystem::path& file);
SceneModel LoadModel(const std::filesystem::path& file);

}  // namespace scenefst

#endif  // SCENEFST_STATS_MODEL_IO_H_
