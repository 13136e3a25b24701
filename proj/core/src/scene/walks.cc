#include "scenefst/scene/walks.h"

#include <algorithm>
#include <set>

#include "scenefst/errors.h"

namespace scenefst {

bool IsHamiltonian(const Walk& walk, const AdjacencyGraph& graph) {
  if (walk.order.size() != graph.size()) return false;
  std::vector<bool> seen(graph.size(), false);
  for (std::size_t i = 0; i < walk.order.size(); ++i) {
    const CellId c = walk.order[i];
    if (c >= graph.size() || seen[c]) return false;
    seen[c] = true;
    if (i > 0 && !graph.HasEdge(walk.order[i - 1], c)) return false;
  }
  return true;
}

namespace {

Walk Boustrophedon(const AdjacencyGraph& graph, bool column_major, bool from_bottom,
                   bool from_right) {
  const int rows = graph.rows();
  const int cols = graph.cols();
  const int outer = column_major ? cols : rows;
  const int inner = column_major ? rows : cols;
  Walk walk;
  walk.order.reserve(graph.size());
  for (int i = 0; i < outer; ++i) {
    for (int j = 0; j < inner; ++j) {
      const int jj = (i % 2 == 0) ? j : inner - 1 - j;
      int r = column_major ? jj : i;
      int c = column_major ? i : jj;
      if (from_bottom) r = rows - 1 - r;
      if (from_right) c = cols - 1 - c;
      walk.order.push_back(static_cast<CellId>(r * cols + c));
    }
  }
  return walk;
}

}  // namespace

Walk SerpentineWalk(const AdjacencyGraph& graph) {
  return Boustrophedon(graph, false, false, false);
}

std::vector<Walk> SerpentineVariants(const AdjacencyGraph& graph) {
  std::vector<Walk> variants;
  for (bool column_major : {false, true}) {
    for (bool from_bottom : {false, true}) {
      for (bool from_right : {false, true}) {
        Walk w = Boustrophedon(graph, column_major, from_bottom, from_right);
        if (std::find(variants.begin(), variants.end(), w) == variants.end()) {
          variants.push_back(std::move(w));
        }
      }
    }
  }
  return variants;
}

void Backbite(Walk& walk, const AdjacencyGraph& graph, std::mt19937_64& rng) {
  auto& p = walk.order;
  if (p.size() < 3) return;
  const bool at_front = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  if (at_front) std::reverse(p.begin(), p.end());

  const CellId end = p.back();
  const CellId pred = p[p.size() - 2];
  std::vector<CellId> candidates;
  for (CellId v : graph.neighbors(end)) {
    if (v != pred) candidates.push_back(v);
  }
  if (!candidates.empty()) {
    const CellId v = candidates[std::uniform_int_distribution<std::size_t>(
        0, candidates.size() - 1)(rng)];
    const auto pos = std::find(p.begin(), p.end(), v);
    std::reverse(pos + 1, p.end());
  }
  if (at_front) std::reverse(p.begin(), p.end());
}

std::vector<Walk> GenerateWalks(const AdjacencyGraph& graph, int count, std::uint64_t seed,
                                const WalkSamplerOptions& options) {
  if (count < 1) throw InputError("walk count must be at least 1");
  std::vector<Walk> walks{SerpentineWalk(graph)};
  std::set<Walk> seen(walks.begin(), walks.end());

  const auto variants = SerpentineVariants(graph);
  const std::size_t moves =
      options.backbite_moves > 0 ? options.backbite_moves : graph.size();
  std::mt19937_64 rng(seed);
  std::size_t attempts = static_cast<std::size_t>(count) * options.attempts_per_walk;
  while (walks.size() < static_cast<std::size_t>(count) && attempts-- > 0) {
    Walk w = variants[std::uniform_int_distribution<std::size_t>(0, variants.size() - 1)(rng)];
    for (std::size_t m = 0; m < moves; ++m) Backbite(w, graph, rng);
    if (seen.insert(w).second) walks.push_back(std::move(w));
  }
  return walks;
}

}  // namespace scenefst
