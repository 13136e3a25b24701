#ifndef SCENEFST_STATS_VISUAL_H_
#define SCENEFST_STATS_VISUAL_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scenefst/scene/grid.h"
#include "scenefst/stats/label_stats.h"

namespace scenefst {

// Per-label real-valued score f_l(x) over feature histograms.
class VisualScorer {
 public:
  virtual ~VisualScorer() = default;
  virtual std::size_t num_labels() const = 0;
  virtual std::size_t dim() const = 0;
  virtual double Score(std::span<const double> features, LabelId label) const = 0;
};

// One-vs-rest linear scorer: f_l(x) = w_l . x + b_l.
class LinearScorer final : public VisualScorer {
 public:
  LinearScorer(std::vector<std::vector<double>> weights, std::vector<double> bias);

  std::size_t num_labels() const override { return weights_.size(); }
  std::size_t dim() const override { return dim_; }
  double Score(std::span<const double> features, LabelId label) const override;

  const std::vector<double>& weights(LabelId label) const { return weights_.at(label); }
  double bias(LabelId label) const { return bias_.at(label); }

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> bias_;
};

// Histogram-intersection scorer over stored exemplars:
// f_l(x) = scale * (mean k(x, e) over exemplars of l - mean over the rest).
class KernelScorer final : public VisualScorer {
 public:
  KernelScorer(std::vector<Histogram> exemplars, std::vector<LabelId> exemplar_labels,
               std::size_t num_labels, double scale);

  std::size_t num_labels() const override { return num_labels_; }
  std::size_t dim() const override { return dim_; }
  double Score(std::span<const double> features, LabelId label) const override;

 private:
  std::vector<Histogram> exemplars_;
  std::vector<LabelId> exemplar_labels_;
  std::vector<std::size_t> label_counts_;
  std::size_t num_labels_;
  std::size_t dim_;
  double scale_;
};

struct VisualTrainOptions {
  double lambda = 1e-3;  // L2 strength on weights and bias
  int iterations = 30;   // Newton iterations per label
  std::uint64_t seed = 0;
  // Seeded subsample of training cells; 0 keeps all of them.
  std::size_t max_samples = 0;
};

// Binary logistic regression with targets in {-1, +1}:
//   L(theta) = mean log(1 + exp(-y theta . [x; 1])) + lambda/2 |theta|^2
struct LogisticProblem {
  Eigen::MatrixXd features;  // m x D
  Eigen::VectorXd targets;   // m, entries +-1
  double lambda = 0.0;
};

// Loss value; fills `gradient` (size D + 1, bias last) when non-null.
double LogisticLoss(const LogisticProblem& problem, const Eigen::VectorXd& theta,
                    Eigen::VectorXd* gradient = nullptr);

// Damped Newton iterations from theta = 0.
Eigen::VectorXd FitLogistic(const LogisticProblem& problem, int iterations);

// One scorer per label in `labels`. Labels absent from training get the
// constant-zero scorer and a warning. Throws InputError when fewer than two
// labels are present or a cell carries a label outside `labels`.
LinearScorer FitVisual(std::span<const SuperpixelGrid> training,
                       const std::vector<std::string>& labels,
                       const VisualTrainOptions& options = {});

KernelScorer FitKernelScorer(std::span<const SuperpixelGrid> training,
                             const std::vector<std::string>& labels,
                             std::size_t max_exemplars, double scale, std::uint64_t seed);

double Sigmoid(double x);

// sigmoid(f_l(x)), in (0, 1); not normalized across labels.
double VisualProb(const VisualScorer& scorer, std::span<const double> features,
                  LabelId label);

}  // namespace scenefst

#endif  // SCENEFST_STATS_VISUAL_H_
