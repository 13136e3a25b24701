#ifndef SCENEFST_SCENE_GRAPH_H_
#define SCENEFST_SCENE_GRAPH_H_

#include <span>
#include <utility>
#include <vector>

#include "scenefst/scene/grid.h"

namespace scenefst {

// 4-connected grid adjacency (top, bottom, left, right).
class AdjacencyGraph {
 public:
  AdjacencyGraph(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return neighbors_.size(); }

  // Neighbors in ascending cell order.
  std::span<const CellId> neighbors(CellId cell) const { return neighbors_.at(cell); }
  std::size_t degree(CellId cell) const { return neighbors_.at(cell).size(); }
  bool HasEdge(CellId u, CellId v) const;

  // Unordered edges as (u, v) with u < v, sorted.
  std::vector<std::pair<CellId, CellId>> Edges() const;
  std::size_t EdgeCount() const;

 private:
  int rows_;
  int cols_;
  std::vector<std::vector<CellId>> neighbors_;
};

AdjacencyGraph BuildGraph(const SuperpixelGrid& grid);

// Histogram intersection kernel: sum_d min(a_d, b_d). Throws InputError on
// dimension mismatch.
double HistogramIntersection(std::span<const double> a, std::span<const double> b);

// Random-walk transition probability from `from` to `to`: zero unless the
// cells are adjacent, otherwise the kernel between their features normalized
// over all neighbors of `from`. A neighborhood whose kernels are all zero
// falls back to uniform.
double TransitionProb(const AdjacencyGraph& graph, const SuperpixelGrid& grid, CellId from,
                      CellId to);

// All TransitionProb values precomputed per (cell, neighbor slot).
class TransitionTable {
 public:
  TransitionTable(const AdjacencyGraph& graph, const SuperpixelGrid& grid);

  // Zero for non-adjacent pairs.
  double Prob(CellId from, CellId to) const;

 private:
  AdjacencyGraph graph_;
  std::vector<std::vector<double>> probs_;  // parallel to graph.neighbors()
};

}  // namespace scenefst

#endif  // SCENEFST_SCENE_GRAPH_H_
