#include "scenefst/scene/grid.h"

#include <cmath>
#include <numeric>
#include <string>

#include "scenefst/errors.h"

namespace scenefst {

SuperpixelGrid::SuperpixelGrid(int rows, int cols, std::vector<Histogram> features,
                               std::vector<std::string> labels, std::string name)
    : rows_(rows),
      cols_(cols),
      features_(std::move(features)),
      labels_(std::move(labels)),
      name_(std::move(name)) {
  const std::string where = name_.empty() ? "scene" : "scene '" + name_ + "'";
  if (rows_ < 1 || cols_ < 1) throw InputError(where + ": rows and cols must be positive");
  const auto n = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  if (features_.size() != n) {
    throw InputError(where + ": expected " + std::to_string(n) + " feature rows, got " +
                     std::to_string(features_.size()));
  }
  if (!labels_.empty() && labels_.size() != n) {
    throw InputError(where + ": expected " + std::to_string(n) + " labels, got " +
                     std::to_string(labels_.size()));
  }
  dim_ = features_.front().size();
  if (dim_ == 0) throw InputError(where + ": feature dimension must be positive");
  for (std::size_t c = 0; c < n; ++c) {
    const Histogram& h = features_[c];
    if (h.size() != dim_) {
      throw InputError(where + ": cell " + std::to_string(c) + " has dimension " +
                       std::to_string(h.size()) + ", expected " + std::to_string(dim_));
    }
    double sum = 0.0;
    for (double v : h) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InputError(where + ": cell " + std::to_string(c) + " has a negative or "
                         "non-finite feature");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
      throw InputError(where + ": cell " + std::to_string(c) + " histogram is not "
                       "L1-normalized");
    }
  }
  for (std::size_t c = 0; c < labels_.size(); ++c) {
    if (labels_[c].empty()) {
      throw InputError(where + ": cell " + std::to_string(c) + " has an empty label");
    }
  }
}

double NormalizeL1(Histogram& h) {
  const double sum = std::accumulate(h.begin(), h.end(), 0.0);
  if (!(sum > 0.0)) {
    const double u = h.empty() ? 0.0 : 1.0 / static_cast<double>(h.size());
    for (double& v : h) v = u;
    return 1.0;
  }
  for (double& v : h) v /= sum;
  return std::abs(sum - 1.0);
}

}  // namespace scenefst
