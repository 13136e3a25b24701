#include "scenefst/fst/lazy_machine.h"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "scenefst/errors.h"

namespace scenefst::fst {

std::size_t StateKeyHash::operator()(const StateKey& key) const noexcept {
  // 64-bit FNV-1a over the key words.
  std::uint64_t h = 14695981039346656037ULL;
  for (std::uint32_t word : key) {
    h ^= word;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

void LazyMachine::ArcsWithInput(const StateKey& state, Label ilabel,
                                std::vector<LazyArc>& out) const {
  std::vector<LazyArc> all;
  Arcs(state, all);
  for (auto& arc : all) {
    if (arc.ilabel == ilabel) out.push_back(std::move(arc));
  }
}

namespace {

class MachineView final : public LazyMachine {
 public:
  explicit MachineView(std::shared_ptr<const Machine> machine)
      : machine_(std::move(machine)), sorted_(machine_->NumStates()) {
    for (StateId s = 0; s < machine_->NumStates(); ++s) {
      const auto arcs = machine_->Arcs(s);
      sorted_[s].assign(arcs.begin(), arcs.end());
      std::stable_sort(sorted_[s].begin(), sorted_[s].end(),
                       [](const Arc& a, const Arc& b) { return a.ilabel < b.ilabel; });
    }
  }

  std::optional<StateKey> Start() const override {
    if (machine_->Empty()) return std::nullopt;
    return StateKey{machine_->Start()};
  }

  TropicalWeight Final(const StateKey& state) const override {
    return machine_->Final(state[0]);
  }

  void Arcs(const StateKey& state, std::vector<LazyArc>& out) const override {
    for (const Arc& arc : machine_->Arcs(state[0])) {
      out.push_back({arc.ilabel, arc.olabel, arc.weight, StateKey{arc.next}});
    }
  }

  void ArcsWithInput(const StateKey& state, Label ilabel,
                     std::vector<LazyArc>& out) const override {
    const auto& arcs = sorted_[state[0]];
    auto [lo, hi] = std::equal_range(
        arcs.begin(), arcs.end(), Arc{ilabel, kEpsilon, TropicalWeight::One(), 0},
        [](const Arc& a, const Arc& b) { return a.ilabel < b.ilabel; });
    for (auto it = lo; it != hi; ++it) {
      out.push_back({it->ilabel, it->olabel, it->weight, StateKey{it->next}});
    }
  }

  const std::shared_ptr<const SymbolTable>& InputSymbols() const override {
    return machine_->InputSymbols();
  }
  const std::shared_ptr<const SymbolTable>& OutputSymbols() const override {
    return machine_->OutputSymbols();
  }

 private:
  std::shared_ptr<const Machine> machine_;
  std::vector<std::vector<Arc>> sorted_;
};

}  // namespace

std::shared_ptr<const LazyMachine> AsLazy(std::shared_ptr<const Machine> machine) {
  if (!machine) throw ConfigError("AsLazy: null machine");
  return std::make_shared<MachineView>(std::move(machine));
}

Machine Materialize(const LazyMachine& machine, std::size_t state_budget) {
  Machine result(machine.InputSymbols(), machine.OutputSymbols());
  const auto start = machine.Start();
  if (!start) return result;

  std::unordered_map<StateKey, StateId, StateKeyHash> ids;
  std::deque<StateKey> queue;
  auto intern = [&](const StateKey& key) -> StateId {
    if (auto it = ids.find(key); it != ids.end()) return it->second;
    if (ids.size() >= state_budget) {
      throw ResourceError("state budget of " + std::to_string(state_budget) +
                          " exceeded: reached " + std::to_string(ids.size() + 1) +
                          " states");
    }
    const StateId id = result.AddState();
    ids.emplace(key, id);
    queue.push_back(key);
    return id;
  };

  result.SetStart(intern(*start));
  std::vector<LazyArc> arcs;
  while (!queue.empty()) {
    const StateKey key = std::move(queue.front());
    queue.pop_front();
    const StateId source = ids.at(key);
    result.SetFinal(source, machine.Final(key));
    arcs.clear();
    machine.Arcs(key, arcs);
    for (const LazyArc& arc : arcs) {
      const StateId next = intern(arc.next);
      result.AddArc(source, {arc.ilabel, arc.olabel, arc.weight, next});
    }
  }
  return result;
}

}  // namespace scenefst::fst
