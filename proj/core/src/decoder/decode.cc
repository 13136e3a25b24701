#include "scenefst/decoder/decode.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "scenefst/decoder/factors.h"
#include "scenefst/decoder/machines.h"
#include "scenefst/errors.h"
#include "scenefst/fst/lazy_machine.h"
#include "scenefst/fst/shortest_path.h"

namespace scenefst {
namespace {

using fst::TropicalWeight;

Labeling LabelingFromPath(const fst::Path& path, std::size_t num_cells, std::size_t num_labels) {
  Walk walk;
  walk.order.reserve(num_cells);
  std::vector<std::size_t> cuts;
  std::vector<LabelId> labels;
  bool open = false;
  for (const fst::PathArc& arc : path.arcs) {
    if (arc.ilabel == fst::kEpsilon) {
      if (arc.olabel == fst::kEpsilon) open = false;
      continue;
    }
    walk.order.push_back(arc.ilabel - 1);
    const LabelId label = arc.olabel - 1;
    if (!open) {
      if (walk.order.size() > 1) cuts.push_back(walk.order.size() - 1);
      labels.push_back(label);
      open = true;
    } else if (labels.back() != label) {
      throw DecodeError("decoded path changes label inside a segment");
    }
  }
  Labeling out = MakeLabeling(std::move(walk), std::move(cuts), std::move(labels), num_labels);
  out.energy = path.weight;
  return out;
}

TropicalWeight FromProb(double p) { return TropicalWeight::FromProbability(p); }

}  // namespace

Labeling Decode(const SceneProblem& problem, const Models& models, const DecodeConfig& config) {
  const auto lattice = BuildLattice(problem, models, config);
  fst::ShortestPathOptions options;
  options.beam = config.beam;
  options.tie_break = config.tie_break;
  options.seed = config.seed;
  const std::optional<fst::Path> path = fst::ShortestPath(*lattice, options);
  if (!path || path->weight.IsZero()) {
    throw DecodeError(
        "no labeling survived decoding; retry with --alpha > 0 or --dependency flat");
  }
  return LabelingFromPath(*path, problem.size(), models.num_labels());
}

Labeling Decode(const SuperpixelGrid& grid, const Models& models, const DecodeConfig& config) {
  config.Validate();
  const SceneProblem problem(grid, config);
  return Decode(problem, models, config);
}

TropicalWeight Energy(const SceneProblem& problem, const Models& models,
                      const DecodeConfig& config, const Labeling& labeling) {
  config.Validate();
  const std::size_t n = problem.size();
  if (labeling.walk.order.size() != n) throw InputError("labeling does not cover the scene");
  // Revalidates the parts.
  const Labeling checked =
      MakeLabeling(labeling.walk, labeling.cuts, labeling.labels, models.num_labels());

  const auto& walks = problem.walks();
  if (std::find(walks.begin(), walks.end(), checked.walk) == walks.end()) {
    return TropicalWeight::Zero();
  }
  TropicalWeight e = FromProb(ReorderingProb(problem, config));
  e = Times(e, FromProb(SegmentCountProb(problem, config)));

  std::span<const CellId> prev;
  LabelId prev_label = 0;
  for (std::size_t i = 0; i < checked.num_segments(); ++i) {
    const auto seg = checked.segment(i);
    e = Times(e, FromProb(SegmentStartProb(problem)));
    for (std::size_t j = 1; j < seg.size(); ++j) {
      e = Times(e, FromProb(GroupingTransitionProb(problem, config, seg[j - 1], seg[j])));
    }
    const std::optional<double> dep =
        DependencyProb(models, config, seg, prev, checked.labels[i], prev_label);
    e = Times(e, dep ? FromProb(*dep) : TropicalWeight::Zero());
    prev = seg;
    prev_label = checked.labels[i];
  }
  for (CellId c = 0; c < n; ++c) {
    e = Times(e, FromProb(VisualLikelihood(models, problem.grid(), config, c,
                                           checked.cell_labels[c])));
  }
  return e;
}

fst::Machine MaterializeLattice(const SceneProblem& problem, const Models& models,
                                const DecodeConfig& config, std::size_t state_budget) {
  return fst::Materialize(*BuildLattice(problem, models, config), state_budget);
}

}  // namespace scenefst
