#ifndef SCENEFST_DECODER_PROBLEM_H_
#define SCENEFST_DECODER_PROBLEM_H_

#include <memory>
#include <string>
#include <vector>

#include "scenefst/decoder/config.h"
#include "scenefst/scene/graph.h"
#include "scenefst/scene/grid.h"
#include "scenefst/scene/walks.h"
#include "scenefst/stats/label_stats.h"
#include "scenefst/stats/model_io.h"
#include "scenefst/stats/visual.h"

namespace scenefst {

// Models consumed by the decoder. `stats` may be null when the dependency
// model is flat and `scorer` may be null when the visual model is flat.
struct Models {
  std::vector<std::string> labels;
  std::shared_ptr<const LabelStats> stats;
  std::shared_ptr<const VisualScorer> scorer;

  std::size_t num_labels() const { return labels.size(); }
};

Models ModelsFrom(const SceneModel& model);
// Label set only; usable when every model is flat.
Models FlatModels(std::vector<std::string> labels);

// A scene with its graph, walk set and transition table, shared by decode,
// energy and the oracle.
class SceneProblem {
 public:
  SceneProblem(SuperpixelGrid grid, const DecodeConfig& config);

  const SuperpixelGrid& grid() const { return grid_; }
  const AdjacencyGraph& graph() const { return graph_; }
  const std::vector<Walk>& walks() const { return walks_; }
  const TransitionTable& transitions() const { return transitions_; }
  std::size_t size() const { return grid_.size(); }

 private:
  SuperpixelGrid grid_;
  AdjacencyGraph graph_;
  std::vector<Walk> walks_;
  TransitionTable transitions_;
};

// Decoded configuration: a walk, K-1 cut positions into it, one label per
// segment, and the per-cell label map those imply.
struct Labeling {
  Walk walk;
  std::vector<std::size_t> cuts;  // strictly increasing, each in [1, n-1]
  std::vector<LabelId> labels;    // one per segment
  std::vector<LabelId> cell_labels;
  fst::TropicalWeight energy;

  std::size_t num_segments() const { return labels.size(); }
  // Cells of segment i in walk order.
  std::span<const CellId> segment(std::size_t i) const;

  friend bool operator==(const Labeling& a, const Labeling& b) {
    return a.walk == b.walk && a.cuts == b.cuts && a.labels == b.labels;
  }
};

// Fills cell_labels; throws InputError when the parts are inconsistent.
Labeling MakeLabeling(Walk walk, std::vector<std::size_t> cuts, std::vector<LabelId> labels,
                      std::size_t num_labels);

// Label names per cell.
std::vector<std::string> CellLabelNames(const Labeling& labeling, const Models& models);

}  // namespace scenefst

#endif  // SCENEFST_DECODER_PROBLEM_H_
