#include "scenefst/stats/visual.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <spdlog/spdlog.h>

#include "scenefst/errors.h"
#include "scenefst/scene/graph.h"

namespace scenefst {

LinearScorer::LinearScorer(std::vector<std::vector<double>> weights, std::vector<double> bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (weights_.empty() || weights_.size() != bias_.size()) {
    throw InputError("linear scorer needs one weight vector and bias per label");
  }
  dim_ = weights_.front().size();
  for (const auto& w : weights_) {
    if (w.size() != dim_) throw InputError("linear scorer weight vectors differ in size");
  }
}

double LinearScorer::Score(std::span<const double> features, LabelId label) const {
  if (features.size() != dim_) {
    throw InputError("feature dimension " + std::to_string(features.size()) +
                     " does not match scorer dimension " + std::to_string(dim_));
  }
  const auto& w = weights_.at(label);
  double s = bias_[label];
  for (std::size_t d = 0; d < dim_; ++d) s += w[d] * features[d];
  return s;
}

KernelScorer::KernelScorer(std::vector<Histogram> exemplars, std::vector<LabelId> exemplar_labels,
                           std::size_t num_labels, double scale)
    : exemplars_(std::move(exemplars)),
      exemplar_labels_(std::move(exemplar_labels)),
      label_counts_(num_labels, 0),
      num_labels_(num_labels),
      scale_(scale) {
  if (exemplars_.empty() || exemplars_.size() != exemplar_labels_.size()) {
    throw InputError("kernel scorer needs labeled exemplars");
  }
  dim_ = exemplars_.front().size();
  for (LabelId l : exemplar_labels_) ++label_counts_.at(l);
}

double KernelScorer::Score(std::span<const double> features, LabelId label) const {
  if (label >= num_labels_) throw InputError("kernel scorer: label out of range");
  const std::size_t in_class = label_counts_[label];
  const std::size_t out_class = exemplars_.size() - in_class;
  if (in_class == 0 || out_class == 0) return 0.0;
  double pos = 0.0;
  double neg = 0.0;
  for (std::size_t i = 0; i < exemplars_.size(); ++i) {
    const double k = HistogramIntersection(features, exemplars_[i]);
    (exemplar_labels_[i] == label ? pos : neg) += k;
  }
  return scale_ * (pos / static_cast<double>(in_class) - neg / static_cast<double>(out_class));
}

namespace {

// log(1 + exp(x)) without overflow.
double Softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

Eigen::VectorXd Margins(const LogisticProblem& problem, const Eigen::VectorXd& theta) {
  const Eigen::Index d = problem.features.cols();
  Eigen::VectorXd z = problem.features * theta.head(d);
  z.array() += theta(d);
  return problem.targets.cwiseProduct(z);
}

}  // namespace

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double LogisticLoss(const LogisticProblem& problem, const Eigen::VectorXd& theta,
                    Eigen::VectorXd* gradient) {
  const Eigen::Index m = problem.features.rows();
  const Eigen::Index d = problem.features.cols();
  const Eigen::VectorXd margins = Margins(problem, theta);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) loss += Softplus(-margins(i));
  loss = loss / static_cast<double>(m) + 0.5 * problem.lambda * theta.squaredNorm();

  if (gradient) {
    // d/dz softplus(-y z) = -y sigmoid(-y z)
    Eigen::VectorXd r(m);
    for (Eigen::Index i = 0; i < m; ++i) r(i) = -problem.targets(i) * Sigmoid(-margins(i));
    gradient->resize(d + 1);
    gradient->head(d) = problem.features.transpose() * r / static_cast<double>(m);
    (*gradient)(d) = r.sum() / static_cast<double>(m);
    *gradient += problem.lambda * theta;
  }
  return loss;
}

Eigen::VectorXd FitLogistic(const LogisticProblem& problem, int iterations) {
  const Eigen::Index m = problem.features.rows();
  const Eigen::Index d = problem.features.cols();
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d + 1);
  Eigen::VectorXd grad;
  double loss = LogisticLoss(problem, theta, &grad);

  for (int it = 0; it < iterations; ++it) {
    if (grad.norm() < 1e-12) break;
    const Eigen::VectorXd margins = Margins(problem, theta);
    Eigen::VectorXd curvature(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double s = Sigmoid(margins(i));
      curvature(i) = s * (1.0 - s) / static_cast<double>(m);
    }
    Eigen::MatrixXd hessian = Eigen::MatrixXd::Zero(d + 1, d + 1);
    const Eigen::MatrixXd weighted = problem.features.transpose() * curvature.asDiagonal();
    hessian.topLeftCorner(d, d) = weighted * problem.features;
    hessian.topRightCorner(d, 1) = weighted.rowwise().sum();
    hessian.bottomLeftCorner(1, d) = hessian.topRightCorner(d, 1).transpose();
    hessian(d, d) = curvature.sum();
    hessian.diagonal().array() += std::max(problem.lambda, 1e-12);

    const Eigen::VectorXd step = hessian.ldlt().solve(grad);
    // Backtracking keeps the loss monotone.
    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      Eigen::VectorXd candidate = theta - t * step;
      Eigen::VectorXd candidate_grad;
      const double candidate_loss = LogisticLoss(problem, candidate, &candidate_grad);
      if (candidate_loss <= loss) {
        theta = std::move(candidate);
        grad = std::move(candidate_grad);
        accepted = candidate_loss < loss;
        loss = candidate_loss;
        break;
      }
    }
    if (!accepted) break;
  }
  return theta;
}

namespace {

struct Samples {
  Eigen::MatrixXd features;
  std::vector<LabelId> labels;
};

Samples CollectSamples(std::span<const SuperpixelGrid> training,
                       const std::vector<std::string>& labels, std::size_t max_samples,
                       std::uint64_t seed) {
  std::vector<std::pair<std::size_t, CellId>> cells;
  std::size_t dim = 0;
  for (std::size_t g = 0; g < training.size(); ++g) {
    if (!training[g].has_labels()) {
      throw InputError("training scene '" + training[g].name() + "' has no labels");
    }
    if (dim == 0) dim = training[g].dim();
    if (training[g].dim() != dim) {
      throw InputError("training scene '" + training[g].name() + "' has feature dimension " +
                       std::to_string(training[g].dim()) + ", expected " + std::to_string(dim));
    }
    for (CellId c = 0; c < training[g].size(); ++c) cells.emplace_back(g, c);
  }
  if (cells.empty()) throw InputError("visual training needs at least one labeled cell");
  if (max_samples > 0 && cells.size() > max_samples) {
    std::mt19937_64 rng(seed);
    std::shuffle(cells.begin(), cells.end(), rng);
    cells.resize(max_samples);
    std::sort(cells.begin(), cells.end());
  }

  Samples samples;
  samples.features.resize(static_cast<Eigen::Index>(cells.size()), static_cast<Eigen::Index>(dim));
  samples.labels.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& [g, c] = cells[i];
    const auto f = training[g].features(c);
    for (std::size_t d = 0; d < dim; ++d) {
      samples.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = f[d];
    }
    const auto it = std::find(labels.begin(), labels.end(), training[g].label(c));
    if (it == labels.end()) {
      throw InputError("training scene '" + training[g].name() + "' uses unknown label '" +
                       training[g].label(c) + "'");
    }
    samples.labels.push_back(static_cast<LabelId>(it - labels.begin()));
  }
  return samples;
}

}  // namespace

LinearScorer FitVisual(std::span<const SuperpixelGrid> training,
                       const std::vector<std::string>& labels,
                       const VisualTrainOptions& options) {
  if (labels.empty()) throw InputError("visual training needs a label set");
  if (options.lambda < 0.0) throw InputError("lambda must be non-negative");
  const Samples samples = CollectSamples(training, labels, options.max_samples, options.seed);
  const std::set<LabelId> present(samples.labels.begin(), samples.labels.end());
  if (present.size() < 2) {
    throw InputError("visual training needs at least two labels present, found " +
                     std::to_string(present.size()));
  }

  const auto dim = static_cast<std::size_t>(samples.features.cols());
  std::vector<std::vector<double>> weights;
  std::vector<double> bias;
  LogisticProblem problem;
  problem.features = samples.features;
  problem.lambda = options.lambda;
  problem.targets.resize(samples.features.rows());
  for (LabelId l = 0; l < labels.size(); ++l) {
    if (!present.contains(l)) {
      spdlog::warn("label '{}' is absent from visual training; its scorer is constant 0",
                   labels[l]);
      weights.emplace_back(dim, 0.0);
      bias.push_back(0.0);
      continue;
    }
    for (std::size_t i = 0; i < samples.labels.size(); ++i) {
      problem.targets(static_cast<Eigen::Index>(i)) = samples.labels[i] == l ? 1.0 : -1.0;
    }
    const Eigen::VectorXd theta = FitLogistic(problem, options.iterations);
    weights.emplace_back(theta.data(), theta.data() + dim);
    bias.push_back(theta(static_cast<Eigen::Index>(dim)));
  }
  return LinearScorer(std::move(weights), std::move(bias));
}

KernelScorer FitKernelScorer(std::span<const SuperpixelGrid> training,
                             const std::vector<std::string>& labels, std::size_t max_exemplars,
                             double scale, std::uint64_t seed) {
  const Samples samples = CollectSamples(training, labels, max_exemplars, seed);
  std::vector<Histogram> exemplars;
  exemplars.reserve(samples.labels.size());
  for (Eigen::Index i = 0; i < samples.features.rows(); ++i) {
    const Eigen::VectorXd row = samples.features.row(i);
    exemplars.emplace_back(row.data(), row.data() + row.size());
  }
  return KernelScorer(std::move(exemplars), samples.labels, labels.size(), scale);
}

double VisualProb(const VisualScorer& scorer, std::span<const double> features,
                  LabelId label) {
  return Sigmoid(scorer.Score(features, label));
}

}  // namespace scenefst
