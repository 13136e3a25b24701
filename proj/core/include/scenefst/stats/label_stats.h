#ifndef SCENEFST_STATS_LABEL_STATS_H_
#define SCENEFST_STATS_LABEL_STATS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scenefst/scene/grid.h"

namespace scenefst {

using LabelId = std::uint32_t;

// Positional label co-occurrence counts at cell resolution:
//   unigram(l, p)        = #training images with cell p labeled l
//   bigram(l, l', p, p') = #training images with p labeled l and p' labeled l'
class LabelStats {
 public:
  LabelStats(std::vector<std::string> labels, int rows, int cols);

  // Label order is `labels` when given, otherwise the sorted set of labels
  // seen in training. Throws InputError naming the first scene whose geometry
  // differs from the first one, or that is unlabeled.
  static LabelStats Fit(std::span<const SuperpixelGrid> training,
                        std::vector<std::string> labels = {});

  // Rebuilds from stored counts; throws InputError when the marginalization
  // invariants do not hold.
  static LabelStats FromCounts(std::vector<std::string> labels, int rows, int cols,
                               std::uint32_t num_images, std::vector<std::uint32_t> unigram,
                               std::vector<std::uint32_t> bigram);

  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<LabelId> FindLabel(std::string_view name) const;
  std::size_t num_labels() const { return labels_.size(); }
  std::size_t num_cells() const { return n_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint32_t num_images() const { return num_images_; }

  std::uint32_t unigram(LabelId l, CellId p) const { return unigram_[l * n_ + p]; }
  std::uint32_t bigram(LabelId l, LabelId l2, CellId p, CellId p2) const {
    return bigram_[BigramIndex(l, l2, p, p2)];
  }
  // Position-marginalized totals for the pooled mode (bigram excludes p == p').
  std::uint64_t pooled_unigram(LabelId l) const { return pooled_unigram_[l]; }
  std::uint64_t pooled_bigram(LabelId l, LabelId l2) const {
    return pooled_bigram_[l * labels_.size() + l2];
  }

  const std::vector<std::uint32_t>& unigram_counts() const { return unigram_; }
  const std::vector<std::uint32_t>& bigram_counts() const { return bigram_; }

  // Unigram column sums equal num_images() for every cell, and
  // sum_l bigram(l, l', p, p') == unigram(l', p') for every (l', p, p').
  bool CountInvariantsHold() const;

 private:
  std::size_t BigramIndex(LabelId l, LabelId l2, CellId p, CellId p2) const {
    return ((static_cast<std::size_t>(l) * labels_.size() + l2) * n_ + p) * n_ + p2;
  }
  void AddImage(std::span<const LabelId> cell_labels);
  void ComputePooled();

  std::vector<std::string> labels_;
  int rows_;
  int cols_;
  std::size_t n_;
  std::uint32_t num_images_ = 0;
  std::vector<std::uint32_t> unigram_;
  std::vector<std::uint32_t> bigram_;
  std::vector<std::uint64_t> pooled_unigram_;
  std::vector<std::uint64_t> pooled_bigram_;
};

enum class Pooling { kPositional, kPooled };

struct SmoothingOptions {
  double alpha = 0.0;  // additive smoothing applied at query time
  Pooling pooling = Pooling::kPositional;
};

// P(label | segment) = (alpha + sum_{p in s} f_u(label, p)) /
//                      (alpha |C| + sum_l sum_{p in s} f_u(l, p)).
// Throws InputError for an empty segment, unknown cells or labels, or when
// the model has no training images.
double UnigramProb(const LabelStats& stats, std::span<const CellId> segment, LabelId label,
                   const SmoothingOptions& options = {});

// Segment-level bigram: pair counts summed over segment x prev_segment,
// normalized over `label`. std::nullopt signals an unseen context (zero
// denominator with alpha = 0). Throws InputError for empty or overlapping
// segments.
std::optional<double> BigramProb(const LabelStats& stats, std::span<const CellId> segment,
                                 std::span<const CellId> prev_segment, LabelId label,
                                 LabelId prev_label, const SmoothingOptions& options = {});

}  // namespace scenefst

#endif  // SCENEFST_STATS_LABEL_STATS_H_
