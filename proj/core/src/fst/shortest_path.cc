#include "scenefst/fst/shortest_path.h"

#include <algorithm>
#include <limits>
#include <queue>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>

#include "scenefst/errors.h"

namespace scenefst::fst {
namespace {

constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

struct Node {
  StateKey key;
  double dist = 0.0;
  std::uint64_t tie = 0;
  std::uint32_t parent = kNoParent;
  PathArc via;
  std::uint32_t equal_count = 1;
  bool done = false;
};

using QueueEntry = std::tuple<double, std::uint64_t, std::uint32_t>;
using MinQueue =
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>>;
using NodeIndex = std::unordered_map<StateKey, std::uint32_t, StateKeyHash>;

class Search {
 public:
  Search(const LazyMachine& machine, const ShortestPathOptions& options)
      : machine_(machine), options_(options), rng_(options.seed) {}

  std::optional<Path> Run() {
    const auto start = machine_.Start();
    if (!start) return std::nullopt;
    if (options_.beam) {
      if (*options_.beam == 0) throw ConfigError("beam width must be positive");
      RunBeam(*start);
    } else {
      RunExact(*start);
    }
    if (best_ == kNoParent) return std::nullopt;
    return Extract();
  }

 private:
  std::uint32_t NewNode(StateKey key, double dist, std::uint32_t parent, const PathArc& via) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    Node node;
    node.key = std::move(key);
    node.dist = dist;
    node.parent = parent;
    node.via = via;
    node.tie = options_.tie_break == TieBreak::kSeeded ? rng_() : id;
    nodes_.push_back(std::move(node));
    return id;
  }

  // Returns true when `target` improved and needs (re)queueing.
  bool Relax(std::uint32_t target, double dist, std::uint32_t parent, const PathArc& via) {
    Node& node = nodes_[target];
    if (node.done) return false;
    if (dist < node.dist) {
      node.dist = dist;
      node.parent = parent;
      node.via = via;
      node.equal_count = 1;
      return true;
    }
    if (dist == node.dist && options_.tie_break == TieBreak::kSeeded) {
      // Reservoir choice among equal-weight predecessors.
      ++node.equal_count;
      if (std::uniform_int_distribution<std::uint32_t>(1, node.equal_count)(rng_) == 1) {
        node.parent = parent;
        node.via = via;
      }
    }
    return false;
  }

  // Inserts or relaxes the node for `arc.next` in `index`; queues it if new
  // or improved.
  void Visit(NodeIndex& index, MinQueue* queue, std::uint32_t parent, LazyArc& arc,
             double dist) {
    const PathArc via{arc.ilabel, arc.olabel, arc.weight};
    auto it = index.find(arc.next);
    if (it == index.end()) {
      const std::uint32_t id = NewNode(std::move(arc.next), dist, parent, via);
      index.emplace(nodes_[id].key, id);
      if (queue) queue->emplace(dist, nodes_[id].tie, id);
      return;
    }
    if (Relax(it->second, dist, parent, via) && queue) {
      queue->emplace(dist, nodes_[it->second].tie, it->second);
    }
  }

  void ConsiderFinal(std::uint32_t id) {
    const Node& node = nodes_[id];
    const TropicalWeight final = machine_.Final(node.key);
    if (final.IsZero()) return;
    const double total = node.dist + final.Value();
    if (best_ == kNoParent || total < best_total_ ||
        (total == best_total_ && node.tie < nodes_[best_].tie)) {
      best_ = id;
      best_total_ = total;
      best_final_ = final;
    }
  }

  bool CannotImprove(double dist) const { return best_ != kNoParent && dist > best_total_; }

  void RunExact(const StateKey& start) {
    NodeIndex index;
    MinQueue queue;
    const std::uint32_t root = NewNode(start, 0.0, kNoParent, {});
    index.emplace(nodes_[root].key, root);
    queue.emplace(0.0, nodes_[root].tie, root);

    std::vector<LazyArc> arcs;
    while (!queue.empty()) {
      const auto [dist, tie, id] = queue.top();
      queue.pop();
      if (nodes_[id].done || dist != nodes_[id].dist) continue;
      if (CannotImprove(dist)) break;
      nodes_[id].done = true;
      ++expanded_;
      ConsiderFinal(id);
      arcs.clear();
      machine_.Arcs(nodes_[id].key, arcs);
      for (LazyArc& arc : arcs) {
        if (arc.weight.IsZero()) continue;
        Visit(index, &queue, id, arc, dist + arc.weight.Value());
      }
    }
  }

  void RunBeam(const StateKey& start) {
    const std::size_t beam = *options_.beam;
    NodeIndex level;
    const std::uint32_t root = NewNode(start, 0.0, kNoParent, {});
    level.emplace(nodes_[root].key, root);

    std::vector<LazyArc> arcs;
    for (std::size_t frontier = 0; !level.empty(); ++frontier) {
      if (frontier >= options_.max_frontiers) {
        throw ResourceError("beam search exceeded " + std::to_string(options_.max_frontiers) +
                            " frontiers");
      }
      MinQueue queue;
      for (const auto& [key, id] : level) queue.emplace(nodes_[id].dist, nodes_[id].tie, id);

      NodeIndex next;
      std::size_t kept = 0;
      while (!queue.empty() && kept < beam) {
        const auto [dist, tie, id] = queue.top();
        queue.pop();
        if (nodes_[id].done || dist != nodes_[id].dist) continue;
        if (CannotImprove(dist)) break;
        nodes_[id].done = true;
        ++kept;
        ++expanded_;
        ConsiderFinal(id);
        arcs.clear();
        machine_.Arcs(nodes_[id].key, arcs);
        for (LazyArc& arc : arcs) {
          if (arc.weight.IsZero()) continue;
          const double d = dist + arc.weight.Value();
          if (arc.ilabel == kEpsilon) {
            Visit(level, &queue, id, arc, d);
          } else {
            Visit(next, nullptr, id, arc, d);
          }
        }
      }
      level = std::move(next);
    }
  }

  Path Extract() const {
    Path path;
    for (std::uint32_t id = best_; nodes_[id].parent != kNoParent; id = nodes_[id].parent) {
      path.arcs.push_back(nodes_[id].via);
    }
    std::reverse(path.arcs.begin(), path.arcs.end());
    path.final_weight = best_final_;
    path.weight = TropicalWeight(best_total_);
    path.states_expanded = expanded_;
    return path;
  }

  const LazyMachine& machine_;
  const ShortestPathOptions& options_;
  std::mt19937_64 rng_;
  std::vector<Node> nodes_;
  std::uint32_t best_ = kNoParent;
  double best_total_ = TropicalWeight::kInfinity;
  TropicalWeight best_final_;
  std::size_t expanded_ = 0;
};

}  // namespace

TropicalWeight PathWeight(const Path& path) {
  double total = 0.0;
  for (const PathArc& arc : path.arcs) {
    if (arc.weight.IsZero()) return TropicalWeight::Zero();
    total += arc.weight.Value();
  }
  if (path.final_weight.IsZero()) return TropicalWeight::Zero();
  return TropicalWeight(total + path.final_weight.Value());
}

std::optional<Path> ShortestPath(const LazyMachine& machine,
                                 const ShortestPathOptions& options) {
  return Search(machine, options).Run();
}

std::optional<Path> ShortestPath(const Machine& machine, const ShortestPathOptions& options) {
  // The lazy view needs shared ownership; alias the caller's machine.
  const auto view = AsLazy(std::shared_ptr<const Machine>(&machine, [](const Machine*) {}));
  return ShortestPath(*view, options);
}

}  // namespace scenefst::fst
