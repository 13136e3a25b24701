#include "scenefst/oracle/oracle.h"

#include <algorithm>
#include <limits>
#include <string>

#include "scenefst/decoder/decode.h"
#include "scenefst/errors.h"

namespace scenefst {
namespace {

constexpr std::size_t kSaturated = std::numeric_limits<std::size_t>::max();

std::size_t SaturatingMul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

}  // namespace

bool OracleResult::Contains(const Labeling& labeling) const {
  return std::find(ties.begin(), ties.end(), labeling) != ties.end();
}

std::size_t ConfigurationCount(std::size_t walks, std::size_t cells, std::size_t labels) {
  std::size_t count = SaturatingMul(walks, labels);
  for (std::size_t i = 1; i < cells; ++i) count = SaturatingMul(count, labels + 1);
  return count;
}

OracleResult EnumerateBest(const SceneProblem& problem, const Models& models,
                           const DecodeConfig& config, const OracleOptions& options) {
  const std::size_t n = problem.size();
  const std::size_t num_labels = models.num_labels();
  const std::size_t total = ConfigurationCount(problem.walks().size(), n, num_labels);
  if (total > options.max_configurations) {
    throw ResourceError("oracle instance has " +
                        (total == kSaturated ? std::string("too many") : std::to_string(total)) +
                        " configurations, above the limit of " +
                        std::to_string(options.max_configurations));
  }

  OracleResult result;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Labeling> candidates;
  std::vector<double> energies;
  for (const Walk& walk : problem.walks()) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
      std::vector<std::size_t> cuts;
      for (std::size_t i = 1; i < n; ++i) {
        if (mask & (std::size_t{1} << (i - 1))) cuts.push_back(i);
      }
      const std::size_t k = cuts.size() + 1;
      std::vector<LabelId> labels(k, 0);
      while (true) {
        Labeling labeling = MakeLabeling(walk, cuts, labels, num_labels);
        labeling.energy = Energy(problem, models, config, labeling);
        ++result.configurations;
        const double e = labeling.energy.Value();
        if (e <= best + options.tie_tolerance) {
          best = std::min(best, e);
          candidates.push_back(std::move(labeling));
          energies.push_back(e);
        }
        std::size_t pos = k;
        while (pos > 0 && ++labels[pos - 1] == num_labels) labels[--pos] = 0;
        if (pos == 0) break;
      }
    }
  }
  result.best = fst::TropicalWeight(best);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (energies[i] <= best + options.tie_tolerance) result.ties.push_back(std::move(candidates[i]));
  }
  return result;
}

}  // namespace scenefst
