#include "scenefst/decoder/machines.h"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "scenefst/decoder/factors.h"
#include "scenefst/errors.h"
#include "scenefst/fst/compose.h"
#include "scenefst/fst/operations.h"

namespace scenefst {
namespace {

using fst::kEpsilon;
using fst::Label;
using fst::LazyArc;
using fst::StateKey;
using fst::TropicalWeight;

constexpr std::uint32_t kNoLabel = std::numeric_limits<std::uint32_t>::max();

class GroupingMachine final : public fst::LazyMachine {
 public:
  GroupingMachine(const SceneProblem& problem, const DecodeConfig& config,
                  const DecoderAlphabets& alphabets)
      : alphabets_(alphabets),
        graph_(problem.graph()),
        open_(TropicalWeight::FromProbability(SegmentStartProb(problem))),
        final_(TropicalWeight::FromProbability(SegmentCountProb(problem, config))) {
    const std::size_t n = problem.size();
    continue_.resize(n);
    for (CellId u = 0; u < n; ++u) {
      for (CellId v : graph_.neighbors(u)) {
        const double p = config.grouping == ModelKind::kFlat
                             ? 1.0 / static_cast<double>(graph_.degree(u))
                             : problem.transitions().Prob(u, v);
        continue_[u].push_back(TropicalWeight::FromProbability(p));
      }
    }
  }

  std::optional<StateKey> Start() const override { return StateKey{kStart}; }

  TropicalWeight Final(const StateKey& key) const override {
    return key[0] >= kInside ? final_ : TropicalWeight::Zero();
  }

  void Arcs(const StateKey& key, std::vector<LazyArc>& out) const override {
    if (key[0] < kInside) {
      for (CellId v = 0; v < alphabets_.num_cells; ++v) Open(v, out);
      return;
    }
    const CellId u = key[0] - kInside;
    const auto neighbors = graph_.neighbors(u);
    for (std::size_t i = 0; i < neighbors.size(); ++i) Continue(u, i, out);
    out.push_back(LazyArc{kEpsilon, alphabets_.BoundarySymbol(), TropicalWeight::One(),
                          StateKey{kBoundary}});
  }

  void ArcsWithInput(const StateKey& key, Label ilabel,
                     std::vector<LazyArc>& out) const override {
    if (ilabel == kEpsilon) {
      if (key[0] >= kInside) {
        out.push_back(LazyArc{kEpsilon, alphabets_.BoundarySymbol(), TropicalWeight::One(),
                              StateKey{kBoundary}});
      }
      return;
    }
    if (ilabel > alphabets_.num_cells) return;
    const CellId v = ilabel - 1;
    if (key[0] < kInside) {
      Open(v, out);
      return;
    }
    const CellId u = key[0] - kInside;
    const auto neighbors = graph_.neighbors(u);
    const auto it = std::lower_bound(neighbors.begin(), neighbors.end(), v);
    if (it != neighbors.end() && *it == v) {
      Continue(u, static_cast<std::size_t>(it - neighbors.begin()), out);
    }
  }

  const std::shared_ptr<const fst::SymbolTable>& InputSymbols() const override {
    return alphabets_.cells;
  }
  const std::shared_ptr<const fst::SymbolTable>& OutputSymbols() const override {
    return alphabets_.cells;
  }

 private:
  static constexpr std::uint32_t kStart = 0;
  static constexpr std::uint32_t kBoundary = 1;
  static constexpr std::uint32_t kInside = 2;

  void Open(CellId v, std::vector<LazyArc>& out) const {
    const Label s = alphabets_.CellSymbol(v);
    out.push_back(LazyArc{s, s, open_, StateKey{kInside + v}});
  }

  void Continue(CellId u, std::size_t slot, std::vector<LazyArc>& out) const {
    const TropicalWeight w = continue_[u][slot];
    if (w.IsZero()) return;
    const CellId v = graph_.neighbors(u)[slot];
    const Label s = alphabets_.CellSymbol(v);
    out.push_back(LazyArc{s, s, w, StateKey{kInside + v}});
  }

  DecoderAlphabets alphabets_;
  AdjacencyGraph graph_;
  TropicalWeight open_;
  TropicalWeight final_;
  std::vector<std::vector<TropicalWeight>> continue_;
};

// Keys:
//   [0]                                   start
//   flat:   [1, l]            [2]         inside / after `#`
//   pair:   [1, l, u]         [2, l, u]   u = last cell read
//   exact:  [1, l, l', m, prev(m)..., cur...]   [2, l, cells...]
class DependencyMachine final : public fst::LazyMachine {
 public:
  DependencyMachine(const Models& models, const DecodeConfig& config,
                    const DecoderAlphabets& alphabets)
      : models_(models), config_(config), alphabets_(alphabets) {
    if (config.dependency == ModelKind::kLearned) {
      if (!models.stats) throw ConfigError("learned dependency model requested without statistics");
      if (models.stats->num_cells() != alphabets.num_cells) {
        throw InputError("label statistics geometry does not match the scene");
      }
    }
    mode_ = config.dependency == ModelKind::kFlat ? Mode::kFlat
            : config.dependency_mode == DependencyMode::kExact ? Mode::kExact
                                                               : Mode::kPair;
    if (mode_ == Mode::kPair) {
      const std::size_t n = alphabets.num_cells;
      const std::size_t num_labels = alphabets.num_labels;
      first_.resize(n * num_labels);
      for (CellId v = 0; v < n; ++v) {
        const CellId seg[] = {v};
        for (LabelId l = 0; l < num_labels; ++l) {
          first_[v * num_labels + l] = ToWeight(DependencyProb(models_, config_, seg, {}, l, 0));
        }
      }
    }
  }

  std::optional<StateKey> Start() const override { return StateKey{kStart}; }

  TropicalWeight Final(const StateKey& key) const override {
    if (key[0] != kInside) return TropicalWeight::Zero();
    return mode_ == Mode::kExact ? Closing(key) : TropicalWeight::One();
  }

  void Arcs(const StateKey& key, std::vector<LazyArc>& out) const override {
    for (Label s = 1; s <= alphabets_.num_cells + 1; ++s) ArcsWithInput(key, s, out);
  }

  void ArcsWithInput(const StateKey& key, Label ilabel,
                     std::vector<LazyArc>& out) const override {
    if (ilabel == kEpsilon) return;
    if (ilabel == alphabets_.BoundarySymbol()) {
      if (key[0] == kInside) Close(key, out);
      return;
    }
    if (ilabel > alphabets_.num_cells) return;
    const CellId v = ilabel - 1;
    if (key[0] == kInside) {
      Extend(key, v, out);
    } else {
      for (LabelId l = 0; l < alphabets_.num_labels; ++l) OpenSegment(key, v, l, out);
    }
  }

  const std::shared_ptr<const fst::SymbolTable>& InputSymbols() const override {
    return alphabets_.cells;
  }
  const std::shared_ptr<const fst::SymbolTable>& OutputSymbols() const override {
    return alphabets_.pairs;
  }

 private:
  enum class Mode { kFlat, kPair, kExact };
  static constexpr std::uint32_t kStart = 0;
  static constexpr std::uint32_t kInside = 1;
  static constexpr std::uint32_t kBoundary = 2;

  static TropicalWeight ToWeight(std::optional<double> p) {
    return p ? TropicalWeight::FromProbability(*p) : TropicalWeight::Zero();
  }

  void OpenSegment(const StateKey& key, CellId v, LabelId l, std::vector<LazyArc>& out) const {
    LazyArc arc{alphabets_.CellSymbol(v), alphabets_.PairSymbol(v, l), TropicalWeight::One(), {}};
    switch (mode_) {
      case Mode::kFlat:
        arc.weight = ToWeight(1.0 / static_cast<double>(alphabets_.num_labels));
        arc.next = StateKey{kInside, l};
        break;
      case Mode::kPair:
        if (key[0] == kStart) {
          arc.weight = first_[v * alphabets_.num_labels + l];
        } else {
          const CellId seg[] = {v};
          const CellId prev[] = {key[2]};
          arc.weight = ToWeight(DependencyProb(models_, config_, seg, prev, l, key[1]));
        }
        arc.next = StateKey{kInside, l, v};
        break;
      case Mode::kExact:
        if (key[0] == kStart) {
          arc.next = StateKey{kInside, l, kNoLabel, 0, v};
        } else {
          arc.next = StateKey{kInside, l, key[1], static_cast<std::uint32_t>(key.size() - 2)};
          arc.next.insert(arc.next.end(), key.begin() + 2, key.end());
          arc.next.push_back(v);
        }
        break;
    }
    if (!arc.weight.IsZero()) out.push_back(std::move(arc));
  }

  void Extend(const StateKey& key, CellId v, std::vector<LazyArc>& out) const {
    const LabelId l = key[1];
    LazyArc arc{alphabets_.CellSymbol(v), alphabets_.PairSymbol(v, l), TropicalWeight::One(),
                key};
    if (mode_ == Mode::kPair) {
      arc.next[2] = v;
    } else if (mode_ == Mode::kExact) {
      arc.next.push_back(v);
    }
    out.push_back(std::move(arc));
  }

  void Close(const StateKey& key, std::vector<LazyArc>& out) const {
    LazyArc arc{alphabets_.BoundarySymbol(), kEpsilon, TropicalWeight::One(), {}};
    switch (mode_) {
      case Mode::kFlat:
        arc.next = StateKey{kBoundary};
        break;
      case Mode::kPair:
        arc.next = StateKey{kBoundary, key[1], key[2]};
        break;
      case Mode::kExact: {
        arc.weight = Closing(key);
        const std::size_t m = key[3];
        arc.next = StateKey{kBoundary, key[1]};
        arc.next.insert(arc.next.end(), key.begin() + 4 + static_cast<std::ptrdiff_t>(m),
                        key.end());
        break;
      }
    }
    if (!arc.weight.IsZero()) out.push_back(std::move(arc));
  }

  TropicalWeight Closing(const StateKey& key) const {
    const std::size_t m = key[3];
    const std::span<const std::uint32_t> all(key.data(), key.size());
    const auto prev = all.subspan(4, m);
    const auto cur = all.subspan(4 + m);
    return ToWeight(DependencyProb(models_, config_, cur, prev, key[1], key[2]));
  }

  Models models_;
  DecodeConfig config_;
  DecoderAlphabets alphabets_;
  Mode mode_;
  std::vector<TropicalWeight> first_;
};

}  // namespace

DecoderAlphabets MakeAlphabets(std::size_t num_cells, const std::vector<std::string>& labels) {
  if (num_cells == 0) throw InputError("scene has no cells");
  if (labels.empty()) throw InputError("label set is empty");
  auto cells = std::make_shared<fst::SymbolTable>();
  auto pairs = std::make_shared<fst::SymbolTable>();
  auto names = std::make_shared<fst::SymbolTable>();
  for (std::size_t c = 0; c < num_cells; ++c) {
    const std::string cell = "s" + std::to_string(c);
    cells->AddSymbol(cell);
    for (const std::string& l : labels) pairs->AddSymbol(cell + "/" + l);
  }
  cells->AddSymbol("#");
  for (const std::string& l : labels) names->AddSymbol(l);

  DecoderAlphabets alphabets;
  alphabets.cells = std::move(cells);
  alphabets.pairs = std::move(pairs);
  alphabets.labels = std::move(names);
  alphabets.num_cells = num_cells;
  alphabets.num_labels = labels.size();
  return alphabets;
}

fst::Machine BuildReordering(std::span<const Walk> walks, const DecoderAlphabets& alphabets,
                             double walk_prob) {
  if (walks.empty()) throw InputError("reordering needs at least one walk");
  const TropicalWeight first = TropicalWeight::FromProbability(walk_prob);
  std::vector<fst::Machine> chains;
  chains.reserve(walks.size());
  for (const Walk& walk : walks) {
    if (walk.order.size() != alphabets.num_cells) {
      throw InputError("walk length does not match the number of cells");
    }
    fst::Machine chain(alphabets.cells, alphabets.cells);
    fst::StateId s = chain.AddState();
    chain.SetStart(s);
    for (std::size_t i = 0; i < walk.order.size(); ++i) {
      const Label sym = alphabets.CellSymbol(walk.order[i]);
      const fst::StateId t = chain.AddState();
      chain.AddArc(s, fst::Arc{sym, sym, i == 0 ? first : TropicalWeight::One(), t});
      s = t;
    }
    chain.SetFinal(s, TropicalWeight::One());
    chains.push_back(std::move(chain));
  }
  return fst::Union(chains);
}

std::shared_ptr<const fst::LazyMachine> BuildGrouping(const SceneProblem& problem,
                                                      const DecodeConfig& config,
                                                      const DecoderAlphabets& alphabets) {
  return std::make_shared<GroupingMachine>(problem, config, alphabets);
}

std::shared_ptr<const fst::LazyMachine> BuildDependency(const Models& models,
                                                        const DecodeConfig& config,
                                                        const DecoderAlphabets& alphabets) {
  return std::make_shared<DependencyMachine>(models, config, alphabets);
}

fst::Machine BuildVisual(const Models& models, const SuperpixelGrid& grid,
                         const DecodeConfig& config, const DecoderAlphabets& alphabets) {
  if (config.visual == ModelKind::kLearned) {
    if (!models.scorer) throw ConfigError("learned visual model requested without a scorer");
    if (models.scorer->dim() != grid.dim()) {
      throw InputError("visual model dimension " + std::to_string(models.scorer->dim()) +
                       " does not match scene features " + std::to_string(grid.dim()));
    }
    if (models.scorer->num_labels() != models.num_labels()) {
      throw InputError("visual model label count does not match the label set");
    }
  }
  fst::Machine v(alphabets.pairs, alphabets.labels);
  const fst::StateId s = v.AddState();
  v.SetStart(s);
  v.SetFinal(s, TropicalWeight::One());
  v.ReserveArcs(s, alphabets.num_cells * alphabets.num_labels);
  for (CellId c = 0; c < alphabets.num_cells; ++c) {
    for (LabelId l = 0; l < alphabets.num_labels; ++l) {
      const double p = VisualLikelihood(models, grid, config, c, l);
      v.AddArc(s, fst::Arc{alphabets.PairSymbol(c, l), alphabets.LabelSymbol(l),
                           TropicalWeight::FromProbability(p), s});
    }
  }
  return v;
}

std::shared_ptr<const fst::LazyMachine> BuildLattice(const SceneProblem& problem,
                                                     const Models& models,
                                                     const DecodeConfig& config) {
  config.Validate();
  const SuperpixelGrid& grid = problem.grid();
  if (config.dependency == ModelKind::kLearned && models.stats &&
      (models.stats->rows() != grid.rows() || models.stats->cols() != grid.cols())) {
    throw InputError("scene '" + grid.name() + "' is " + std::to_string(grid.rows()) + "x" +
                     std::to_string(grid.cols()) + " but the label statistics are " +
                     std::to_string(models.stats->rows()) + "x" +
                     std::to_string(models.stats->cols()));
  }
  const DecoderAlphabets alphabets = MakeAlphabets(problem.size(), models.labels);
  auto r = std::make_shared<const fst::Machine>(
      BuildReordering(problem.walks(), alphabets, ReorderingProb(problem, config)));
  auto v = std::make_shared<const fst::Machine>(
      BuildVisual(models, problem.grid(), config, alphabets));
  auto rg = fst::Compose(fst::AsLazy(r), BuildGrouping(problem, config, alphabets));
  auto rgd = fst::Compose(rg, BuildDependency(models, config, alphabets));
  return fst::Compose(rgd, fst::AsLazy(v));
}

}  // namespace scenefst
