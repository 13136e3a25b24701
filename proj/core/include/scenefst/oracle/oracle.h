#ifndef SCENEFST_ORACLE_ORACLE_H_
#define SCENEFST_ORACLE_ORACLE_H_

#include <cstddef>
#include <vector>

#include "scenefst/decoder/config.h"
#include "scenefst/decoder/problem.h"

namespace scenefst {

struct OracleOptions {
  // Refuse instances with more configurations than this.
  std::size_t max_configurations = 10'000'000;
  // Configurations within this distance of the minimum form the tie set.
  double tie_tolerance = 1e-9;
};

struct OracleResult {
  fst::TropicalWeight best = fst::TropicalWeight::Zero();
  // Minimal configurations in (walk index, cut mask, labels) order; each
  // carries its energy.
  std::vector<Labeling> ties;
  std::size_t configurations = 0;

  bool Contains(const Labeling& labeling) const;
};

// Number of (walk, segmentation, labeling) triples:
// walks * sum_K C(n-1, K-1) L^K = walks * L * (1 + L)^(n-1). Saturates at
// SIZE_MAX.
std::size_t ConfigurationCount(std::size_t walks, std::size_t cells, std::size_t labels);

// Exhaustive minimization of Energy() over every walk in the problem's walk
// set, every cut set and every segment labeling. Throws ResourceError when
// the configuration count exceeds options.max_configurations.
OracleResult EnumerateBest(const SceneProblem& problem, const Models& models,
                           const DecodeConfig& config, const OracleOptions& options = {});

}  // namespace scenefst

#endif  // SCENEFST_ORACLE_ORACLE_H_
