#include "scenefst/stats/label_stats.h"

#include <algorithm>
#include <set>
#include <string>

#include "scenefst/errors.h"

namespace scenefst {

LabelStats::LabelStats(std::vector<std::string> labels, int rows, int cols)
    : labels_(std::move(labels)), rows_(rows), cols_(cols) {
  if (labels_.empty()) throw InputError("label set must not be empty");
  if (rows < 1 || cols < 1) throw InputError("label statistics need a positive geometry");
  std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != labels_.size()) throw InputError("label set contains duplicates");
  n_ = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  const std::size_t L = labels_.size();
  unigram_.assign(L * n_, 0);
  bigram_.assign(L * L * n_ * n_, 0);
  pooled_unigram_.assign(L, 0);
  pooled_bigram_.assign(L * L, 0);
}

std::optional<LabelId> LabelStats::FindLabel(std::string_view name) const {
  const auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<LabelId>(it - labels_.begin());
}

void LabelStats::AddImage(std::span<const LabelId> cell_labels) {
  for (CellId p = 0; p < n_; ++p) ++unigram_[cell_labels[p] * n_ + p];
  for (CellId p = 0; p < n_; ++p) {
    for (CellId q = 0; q < n_; ++q) ++bigram_[BigramIndex(cell_labels[p], cell_labels[q], p, q)];
  }
  ++num_images_;
}

void LabelStats::ComputePooled() {
  const std::size_t L = labels_.size();
  std::fill(pooled_unigram_.begin(), pooled_unigram_.end(), 0);
  std::fill(pooled_bigram_.begin(), pooled_bigram_.end(), 0);
  for (LabelId l = 0; l < L; ++l) {
    for (CellId p = 0; p < n_; ++p) pooled_unigram_[l] += unigram(l, p);
    for (LabelId l2 = 0; l2 < L; ++l2) {
      std::uint64_t total = 0;
      for (CellId p = 0; p < n_; ++p) {
        for (CellId q = 0; q < n_; ++q) {
          if (p != q) total += bigram(l, l2, p, q);
        }
      }
      pooled_bigram_[l * L + l2] = total;
    }
  }
}

LabelStats LabelStats::Fit(std::span<const SuperpixelGrid> training,
                           std::vector<std::string> labels) {
  if (training.empty()) throw InputError("label statistics need at least one training scene");
  const SuperpixelGrid& first = training.front();
  for (const SuperpixelGrid& g : training) {
    if (!g.has_labels()) throw InputError("training scene '" + g.name() + "' has no labels");
    if (g.rows() != first.rows() || g.cols() != first.cols()) {
      throw InputError("training scene '" + g.name() + "' is " + std::to_string(g.rows()) +
                       "x" + std::to_string(g.cols()) + ", expected " +
                       std::to_string(first.rows()) + "x" + std::to_string(first.cols()));
    }
  }
  if (labels.empty()) {
    std::set<std::string> seen;
    for (const SuperpixelGrid& g : training) seen.insert(g.labels().begin(), g.labels().end());
    labels.assign(seen.begin(), seen.end());
  }

  LabelStats stats(std::move(labels), first.rows(), first.cols());
  std::vector<LabelId> ids(stats.n_);
  for (const SuperpixelGrid& g : training) {
    for (CellId p = 0; p < stats.n_; ++p) {
      const auto id = stats.FindLabel(g.label(p));
      if (!id) {
        throw InputError("training scene '" + g.name() + "' uses unknown label '" +
                         g.label(p) + "'");
      }
      ids[p] = *id;
    }
    stats.AddImage(ids);
  }
  stats.ComputePooled();
  return stats;
}

LabelStats LabelStats::FromCounts(std::vector<std::string> labels, int rows, int cols,
                                  std::uint32_t num_images, std::vector<std::uint32_t> unigram,
                                  std::vector<std::uint32_t> bigram) {
  LabelStats stats(std::move(labels), rows, cols);
  if (unigram.size() != stats.unigram_.size() || bigram.size() != stats.bigram_.size()) {
    throw InputError("label statistics: count table sizes do not match the geometry");
  }
  stats.num_images_ = num_images;
  stats.unigram_ = std::move(unigram);
  stats.bigram_ = std::move(bigram);
  if (!stats.CountInvariantsHold()) {
    throw InputError("label statistics: counts violate the marginalization invariants");
  }
  stats.ComputePooled();
  return stats;
}

bool LabelStats::CountInvariantsHold() const {
  const std::size_t L = labels_.size();
  for (CellId p = 0; p < n_; ++p) {
    std::uint64_t column = 0;
    for (LabelId l = 0; l < L; ++l) column += unigram(l, p);
    if (column != num_images_) return false;
  }
  for (LabelId l2 = 0; l2 < L; ++l2) {
    for (CellId p = 0; p < n_; ++p) {
      for (CellId q = 0; q < n_; ++q) {
        std::uint64_t sum = 0;
        for (LabelId l = 0; l < L; ++l) sum += bigram(l, l2, p, q);
        if (sum != unigram(l2, q)) return false;
      }
    }
  }
  return true;
}

namespace {

void CheckSegment(const LabelStats& stats, std::span<const CellId> segment,
                  std::string_view what) {
  if (segment.empty()) throw InputError(std::string(what) + " must not be empty");
  for (CellId c : segment) {
    if (c >= stats.num_cells()) {
      throw InputError(std::string(what) + " contains out-of-range cell " + std::to_string(c));
    }
  }
}

void CheckLabel(const LabelStats& stats, LabelId label) {
  if (label >= stats.num_labels()) {
    throw InputError("label id " + std::to_string(label) + " out of range");
  }
}

}  // namespace

double UnigramProb(const LabelStats& stats, std::span<const CellId> segment, LabelId label,
                   const SmoothingOptions& options) {
  CheckSegment(stats, segment, "segment");
  CheckLabel(stats, label);
  if (stats.num_images() == 0) throw InputError("label statistics have no training images");
  const double L = static_cast<double>(stats.num_labels());

  double numerator = 0.0;
  double denominator = 0.0;
  if (options.pooling == Pooling::kPooled) {
    numerator = static_cast<double>(stats.pooled_unigram(label));
    for (LabelId l = 0; l < stats.num_labels(); ++l) {
      denominator += static_cast<double>(stats.pooled_unigram(l));
    }
  } else {
    std::uint64_t num = 0;
    std::uint64_t den = 0;
    for (CellId p : segment) {
      num += stats.unigram(label, p);
      for (LabelId l = 0; l < stats.num_labels(); ++l) den += stats.unigram(l, p);
    }
    numerator = static_cast<double>(num);
    denominator = static_cast<double>(den);
  }
  return (options.alpha + numerator) / (options.alpha * L + denominator);
}

std::optional<double> BigramProb(const LabelStats& stats, std::span<const CellId> segment,
                                 std::span<const CellId> prev_segment, LabelId label,
                                 LabelId prev_label, const SmoothingOptions& options) {
  CheckSegment(stats, segment, "segment");
  CheckSegment(stats, prev_segment, "previous segment");
  CheckLabel(stats, label);
  CheckLabel(stats, prev_label);
  for (CellId p : segment) {
    if (std::find(prev_segment.begin(), prev_segment.end(), p) != prev_segment.end()) {
      throw InputError("segment and previous segment must be disjoint");
    }
  }
  const std::size_t L = stats.num_labels();

  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  if (options.pooling == Pooling::kPooled) {
    numerator = stats.pooled_bigram(label, prev_label);
    for (LabelId l = 0; l < L; ++l) denominator += stats.pooled_bigram(l, prev_label);
  } else {
    for (CellId p : segment) {
      for (CellId q : prev_segment) {
        for (LabelId l = 0; l < L; ++l) {
          const std::uint32_t c = stats.bigram(l, prev_label, p, q);
          denominator += c;
          if (l == label) numerator += c;
        }
      }
    }
  }
  if (denominator == 0 && options.alpha == 0.0) return std::nullopt;
  return (options.alpha + static_cast<double>(numerator)) /
         (options.alpha * static_cast<double>(L) + static_cast<double>(denominator));
}

}  // namespace scenefst
