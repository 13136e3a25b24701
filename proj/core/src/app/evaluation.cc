#include "scenefst/app/evaluation.h"

#include <algorithm>
#include <cstdio>

#include <spdlog/spdlog.h>

#include "scenefst/errors.h"

namespace scenefst {

Evaluator::Evaluator(std::vector<std::string> labels)
    : labels_(std::move(labels)),
      predicted_(labels_.size(), 0),
      truth_(labels_.size(), 0),
      correct_(labels_.size(), 0) {
  if (labels_.empty()) throw InputError("evaluation needs a non-empty label set");
}

std::size_t Evaluator::Index(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InputError("label '" + label + "' is not in the label set");
  return static_cast<std::size_t>(it - labels_.begin());
}

void Evaluator::Add(std::span<const std::string> predicted, std::span<const std::string> truth) {
  if (predicted.size() != truth.size()) {
    throw InputError("prediction covers " + std::to_string(predicted.size()) +
                     " cells but ground truth has " + std::to_string(truth.size()));
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const std::size_t p = Index(predicted[i]);
    const std::size_t t = Index(truth[i]);
    ++predicted_[p];
    ++truth_[t];
    if (p == t) ++correct_[t];
  }
  cells_ += predicted.size();
}

EvalReport Evaluator::Report() const {
  EvalReport report;
  report.cells = cells_;
  std::size_t defined = 0;
  for (std::size_t l = 0; l < labels_.size(); ++l) {
    ClassRates rates;
    rates.label = labels_[l];
    rates.positives = truth_[l];
    rates.negatives = cells_ - truth_[l];
    rates.false_rejects = truth_[l] - correct_[l];
    rates.false_accepts = predicted_[l] - correct_[l];
    rates.defined = rates.positives > 0;
    if (!rates.defined) {
      spdlog::warn("class '{}' does not occur in the ground truth; excluded from the mean",
                   rates.label);
    } else {
      rates.frr = 100.0 * static_cast<double>(rates.false_rejects) /
                  static_cast<double>(rates.positives);
      rates.far = rates.negatives == 0 ? 0.0
                                       : 100.0 * static_cast<double>(rates.false_accepts) /
                                             static_cast<double>(rates.negatives);
      rates.eer = (rates.far + rates.frr) / 2.0;
      report.mean_far += rates.far;
      report.mean_frr += rates.frr;
      report.mean_eer += rates.eer;
      ++defined;
    }
    report.classes.push_back(rates);
  }
  if (defined > 0) {
    report.mean_far /= static_cast<double>(defined);
    report.mean_frr /= static_cast<double>(defined);
    report.mean_eer /= static_cast<double>(defined);
  }
  return report;
}

void WriteReport(const EvalReport& report, std::ostream& os) {
  char buf[128];
  os << "class\tFAR\tFRR\tEER\n";
  for (const ClassRates& c : report.classes) {
    if (!c.defined) {
      os << c.label << "\tundefined\tundefined\tundefined\n";
      continue;
    }
    std::snprintf(buf, sizeof(buf), "\t%.2f\t%.2f\t%.2f\n", c.far, c.frr, c.eer);
    os << c.label << buf;
  }
  std::snprintf(buf, sizeof(buf), "mean\t%.2f\t%.2f\t%.2f\n", report.mean_far, report.mean_frr,
                report.mean_eer);
  os << buf;
}

}  // namespace scenefst
