#ifndef SCENEFST_FST_SHORTEST_PATH_H_
#define SCENEFST_FST_SHORTEST_PATH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "scenefst/fst/lazy_machine.h"
#include "scenefst/fst/machine.h"

namespace scenefst::fst {

enum class TieBreak {
  kDeterministic,  // lowest (discovery order, arc index) wins
  kSeeded,         // uniformly random among equal-weight alternatives
};

struct ShortestPathOptions {
  // Unset: exact uniform-cost search. Set: frontiers are the states reached
  // after consuming the same number of non-epsilon input symbols, and only
  // the `beam` lowest accumulated weights of each frontier are expanded.
  std::optional<std::size_t> beam;
  TieBreak tie_break = TieBreak::kDeterministic;
  std::uint64_t seed = 0;
  // Guards beam search on cyclic machines.
  std::size_t max_frontiers = std::size_t{1} << 20;
};

struct PathArc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  TropicalWeight weight;
};

struct Path {
  std::vector<PathArc> arcs;
  TropicalWeight final_weight;
  TropicalWeight weight;  // arc weights times final weight
  std::size_t states_expanded = 0;
};

// Sum of the arc weights and the final weight, in path order.
TropicalWeight PathWeight(const Path& path);

// Best accepting path, or std::nullopt when the language is empty.
std::optional<Path> ShortestPath(const LazyMachine& machine,
                                 const ShortestPathOptions& options = {});
std::optional<Path> ShortestPath(const Machine& machine,
                                 const ShortestPathOptions& options = {});

}  // namespace scenefst::fst

#endif  // SCENEFST_FST_SHORTEST_PATH_H_
