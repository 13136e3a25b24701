#include "scenefst/decoder/factors.h"

#include "scenefst/errors.h"
#include "scenefst/scene/graph.h"
#include "scenefst/stats/visual.h"

namespace scenefst {

double ReorderingProb(const SceneProblem& problem, const DecodeConfig& config) {
  return config.reorder_prior_scale / static_cast<double>(problem.walks().size());
}

double SegmentCountProb(const SceneProblem& problem, const DecodeConfig& config) {
  return config.count_prior_scale / static_cast<double>(problem.size());
}

double SegmentStartProb(const SceneProblem& problem) {
  return 1.0 / static_cast<double>(problem.size());
}

double GroupingTransitionProb(const SceneProblem& problem, const DecodeConfig& config,
                              CellId from, CellId to) {
  const AdjacencyGraph& graph = problem.graph();
  if (!graph.HasEdge(from, to)) return 0.0;
  if (config.grouping == ModelKind::kFlat) {
    return 1.0 / static_cast<double>(graph.degree(from));
  }
  return TransitionProb(graph, problem.grid(), from, to);
}

std::optional<double> DependencyProb(const Models& models, const DecodeConfig& config,
                                     std::span<const CellId> segment,
                                     std::span<const CellId> prev_segment, LabelId label,
                                     LabelId prev_label) {
  if (config.dependency == ModelKind::kFlat) {
    return 1.0 / static_cast<double>(models.num_labels());
  }
  if (!models.stats) throw ConfigError("learned dependency model requested without statistics");
  const LabelStats& stats = *models.stats;
  if (config.dependency_mode == DependencyMode::kBoundaryPair) {
    segment = segment.first(1);
    if (!prev_segment.empty()) prev_segment = prev_segment.last(1);
  }
  if (prev_segment.empty()) return UnigramProb(stats, segment, label, config.smoothing);
  return BigramProb(stats, segment, prev_segment, label, prev_label, config.smoothing);
}

double VisualLikelihood(const Models& models, const SuperpixelGrid& grid,
                        const DecodeConfig& config, CellId cell, LabelId label) {
  const std::size_t num_labels = models.num_labels();
  if (config.visual == ModelKind::kFlat) {
    const double p = config.normalize_visual ? 1.0 / static_cast<double>(num_labels) : 0.5;
    return config.visual_scale * p;
  }
  if (!models.scorer) throw ConfigError("learned visual model requested without a scorer");
  const auto features = grid.features(cell);
  const double p = VisualProb(*models.scorer, features, label);
  if (!config.normalize_visual) return config.visual_scale * p;
  double total = 0.0;
  for (LabelId l = 0; l < num_labels; ++l) total += VisualProb(*models.scorer, features, l);
  return config.visual_scale * p / total;
}

}  // namespace scenefst
