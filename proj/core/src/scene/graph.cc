#include "scenefst/scene/graph.h"

#include <algorithm>
#include <string>

#include "scenefst/errors.h"

namespace scenefst {

AdjacencyGraph::AdjacencyGraph(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw InputError("grid graph needs rows >= 1 and cols >= 1");
  neighbors_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      auto& nb = neighbors_[static_cast<std::size_t>(r * cols + c)];
      if (r > 0) nb.push_back(static_cast<CellId>((r - 1) * cols + c));
      if (c > 0) nb.push_back(static_cast<CellId>(r * cols + c - 1));
      if (c + 1 < cols) nb.push_back(static_cast<CellId>(r * cols + c + 1));
      if (r + 1 < rows) nb.push_back(static_cast<CellId>((r + 1) * cols + c));
    }
  }
}

bool AdjacencyGraph::HasEdge(CellId u, CellId v) const {
  if (u >= size() || v >= size()) return false;
  const auto& nb = neighbors_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<CellId, CellId>> AdjacencyGraph::Edges() const {
  std::vector<std::pair<CellId, CellId>> edges;
  for (CellId u = 0; u < size(); ++u) {
    for (CellId v : neighbors_[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

std::size_t AdjacencyGraph::EdgeCount() const {
  std::size_t degree_sum = 0;
  for (const auto& nb : neighbors_) degree_sum += nb.size();
  return degree_sum / 2;
}

AdjacencyGraph BuildGraph(const SuperpixelGrid& grid) {
  return AdjacencyGraph(grid.rows(), grid.cols());
}

double HistogramIntersection(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputError("histogram intersection: dimensions " + std::to_string(a.size()) +
                     " and " + std::to_string(b.size()) + " differ");
  }
  double sum = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) sum += std::min(a[d], b[d]);
  return sum;
}

namespace {

// Kernel values of `from` against each neighbor, normalized; uniform when
// every kernel is zero.
std::vector<double> NeighborDistribution(const AdjacencyGraph& graph,
                                         const SuperpixelGrid& grid, CellId from) {
  const auto nb = graph.neighbors(from);
  std::vector<double> probs(nb.size());
  double total = 0.0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    probs[i] = HistogramIntersection(grid.features(nb[i]), grid.features(from));
    total += probs[i];
  }
  if (!(total > 0.0)) {
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(nb.size()));
    return probs;
  }
  for (double& p : probs) p /= total;
  return probs;
}

void CheckCells(const AdjacencyGraph& graph, const SuperpixelGrid& grid, CellId from,
                CellId to) {
  if (graph.size() != grid.size()) throw InputError("graph and grid sizes differ");
  if (from >= graph.size() || to >= graph.size()) {
    throw InputError("transition: cell id out of range");
  }
}

}  // namespace

double TransitionProb(const AdjacencyGraph& graph, const SuperpixelGrid& grid, CellId from,
                      CellId to) {
  CheckCells(graph, grid, from, to);
  const auto nb = graph.neighbors(from);
  const auto it = std::find(nb.begin(), nb.end(), to);
  if (it == nb.end()) return 0.0;
  return NeighborDistribution(graph, grid, from)[static_cast<std::size_t>(it - nb.begin())];
}

TransitionTable::TransitionTable(const AdjacencyGraph& graph, const SuperpixelGrid& grid)
    : graph_(graph) {
  if (graph.size() != grid.size()) throw InputError("graph and grid sizes differ");
  probs_.reserve(graph.size());
  for (CellId c = 0; c < graph.size(); ++c) {
    probs_.push_back(NeighborDistribution(graph, grid, c));
  }
}

double TransitionTable::Prob(CellId from, CellId to) const {
  const auto nb = graph_.neighbors(from);
  const auto it = std::lower_bound(nb.begin(), nb.end(), to);
  if (it == nb.end() || *it != to) return 0.0;
  return probs_[from][static_cast<std::size_t>(it - nb.begin())];
}

}  // namespace scenefst
