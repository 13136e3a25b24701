#ifndef SCENEFST_DECODER_FACTORS_H_
#define SCENEFST_DECODER_FACTORS_H_

#include <optional>
#include <span>

#include "scenefst/decoder/config.h"
#include "scenefst/decoder/problem.h"

namespace scenefst {

// Probability factors of the joint model, shared by the machine builders
// and the direct energy evaluation.

// P(Pi) for a walk of the walk set.
double ReorderingProb(const SceneProblem& problem, const DecodeConfig& config);
// P(K) = 1/n, and the segment-start prior P(Pi_k) = 1/n.
double SegmentCountProb(const SceneProblem& problem, const DecodeConfig& config);
double SegmentStartProb(const SceneProblem& problem);
// Within-segment transition u -> v: kernel random walk (learned) or
// 1/deg(u) (flat); zero for non-adjacent cells. Evaluated from the features
// directly, not from the precomputed table.
double GroupingTransitionProb(const SceneProblem& problem, const DecodeConfig& config,
                              CellId from, CellId to);

// P(Y_s | Y_prev) (or P(Y_s) when prev_segment is empty) under the
// configured dependency model. In boundary-pair mode only the first cell of
// `segment` and the last cell of `prev_segment` are used. std::nullopt marks
// an unseen context.
std::optional<double> DependencyProb(const Models& models, const DecodeConfig& config,
                                     std::span<const CellId> segment,
                                     std::span<const CellId> prev_segment, LabelId label,
                                     LabelId prev_label);

// P(X_s | label) for one cell, including normalization and scaling flags.
double VisualLikelihood(const Models& models, const SuperpixelGrid& grid,
                        const DecodeConfig& config, CellId cell, LabelId label);

}  // namespace scenefst

#endif  // SCENEFST_DECODER_FACTORS_H_
