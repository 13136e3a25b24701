#include "scenefst/decoder/problem.h"

#include <string>
#include <utility>

#include "scenefst/errors.h"

namespace scenefst {

Models ModelsFrom(const SceneModel& model) {
  if (!model.stats) throw InputError("model has no label statistics");
  Models models;
  models.labels = model.stats->labels();
  models.stats = model.stats;
  models.scorer = model.scorer;
  return models;
}

Models FlatModels(std::vector<std::string> labels) {
  if (labels.empty()) throw InputError("label set is empty");
  Models models;
  models.labels = std::move(labels);
  return models;
}

SceneProblem::SceneProblem(SuperpixelGrid grid, const DecodeConfig& config)
    : grid_(std::move(grid)),
      graph_(BuildGraph(grid_)),
      walks_(GenerateWalks(graph_, config.EffectiveWalkCount(), config.seed,
                           config.walk_sampler)),
      transitions_(graph_, grid_) {}

std::span<const CellId> Labeling::segment(std::size_t i) const {
  const std::size_t begin = i == 0 ? 0 : cuts.at(i - 1);
  const std::size_t end = i < cuts.size() ? cuts[i] : walk.order.size();
  return std::span<const CellId>(walk.order).subspan(begin, end - begin);
}

Labeling MakeLabeling(Walk walk, std::vector<std::size_t> cuts, std::vector<LabelId> labels,
                      std::size_t num_labels) {
  const std::size_t n = walk.order.size();
  if (n == 0) throw InputError("labeling has an empty walk");
  std::vector<bool> seen(n, false);
  for (CellId c : walk.order) {
    if (c >= n || seen[c]) throw InputError("labeling walk is not a permutation of the cells");
    seen[c] = true;
  }
  std::size_t last = 0;
  for (std::size_t cut : cuts) {
    if (cut <= last || cut >= n) throw InputError("labeling cuts must increase within [1, n-1]");
    last = cut;
  }
  if (labels.size() != cuts.size() + 1) {
    throw InputError("labeling needs one label per segment");
  }
  for (LabelId l : labels) {
    if (l >= num_labels) throw InputError("labeling uses an unknown label");
  }

  Labeling out;
  out.walk = std::move(walk);
  out.cuts = std::move(cuts);
  out.labels = std::move(labels);
  out.cell_labels.assign(n, 0);
  for (std::size_t i = 0; i < out.num_segments(); ++i) {
    for (CellId c : out.segment(i)) out.cell_labels[c] = out.labels[i];
  }
  return out;
}

std::vector<std::string> CellLabelNames(const Labeling& labeling, const Models& models) {
  std::vector<std::string> names;
  names.reserve(labeling.cell_labels.size());
  for (LabelId l : labeling.cell_labels) names.push_back(models.labels.at(l));
  return names;
}

}  // namespace scenefst
