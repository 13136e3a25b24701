#ifndef SCENEFST_SCENE_WALKS_H_
#define SCENEFST_SCENE_WALKS_H_

#include <cstdint>
#include <random>
#include <vector>

#include "scenefst/scene/graph.h"

namespace scenefst {

// A Hamiltonian path over the grid graph: each cell exactly once, every
// consecutive pair adjacent.
struct Walk {
  std::vector<CellId> order;

  friend bool operator==(const Walk&, const Walk&) = default;
  friend auto operator<=>(const Walk&, const Walk&) = default;
};

bool IsHamiltonian(const Walk& walk, const AdjacencyGraph& graph);

// Row-major boustrophedon from cell 0: even rows left to right, odd rows
// right to left.
Walk SerpentineWalk(const AdjacencyGraph& graph);

// The row- and column-major boustrophedons from each of the four corners,
// deduplicated, starting with SerpentineWalk().
std::vector<Walk> SerpentineVariants(const AdjacencyGraph& graph);

struct WalkSamplerOptions {
  // Backbite moves applied to a randomly chosen serpentine variant for each
  // sampled walk. Zero means one move per cell.
  std::size_t backbite_moves = 0;
  // Sampling attempts per requested walk before giving up on duplicates.
  std::size_t attempts_per_walk = 64;
};

// Applies one backbite move in place: an end of the path is joined to a
// random grid neighbor already on the path and the resulting cycle is
// reopened, which keeps the path Hamiltonian.
void Backbite(Walk& walk, const AdjacencyGraph& graph, std::mt19937_64& rng);

// Up to `count` distinct Hamiltonian walks. The first is always the row-major
// serpentine; the rest are seeded backbite perturbations of serpentine
// variants. Deterministic in (graph, count, seed). Throws InputError if
// count < 1.
std::vector<Walk> GenerateWalks(const AdjacencyGraph& graph, int count, std::uint64_t seed,
                                const WalkSamplerOptions& options = {});

}  // namespace scenefst

#endif  // SCENEFST_SCENE_WALKS_H_
