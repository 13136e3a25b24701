#ifndef SCENEFST_FST_LAZY_MACHINE_H_
#define SCENEFST_FST_LAZY_MACHINE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "scenefst/fst/machine.h"

namespace scenefst::fst {

// Opaque, value-typed state identifier of a lazily expanded machine.
// Composition nests the operand keys, so the inline capacity is sized for
// the four-machine decoder cascade.
using StateKey = boost::container::small_vector<std::uint32_t, 14>;

struct StateKeyHash {
  std::size_t operator()(const StateKey& key) const noexcept;
};

struct LazyArc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  TropicalWeight weight = TropicalWeight::One();
  StateKey next;
};

// A machine whose states are produced on demand. Implementations must be
// pure: the same key always expands to the same arcs and final weight, and
// expansion never mutates shared state, so concurrent searches are safe.
class LazyMachine {
 public:
  virtual ~LazyMachine() = default;

  // std::nullopt for the empty machine.
  virtual std::optional<StateKey> Start() const = 0;
  virtual TropicalWeight Final(const StateKey& state) const = 0;

  // Appends all outgoing arcs of `state` to `out`.
  virtual void Arcs(const StateKey& state, std::vector<LazyArc>& out) const = 0;

  // Appends only arcs whose input label equals `ilabel`. The default filters
  // Arcs(); machines with large fan-out override it.
  virtual void ArcsWithInput(const StateKey& state, Label ilabel,
                             std::vector<LazyArc>& out) const;

  virtual const std::shared_ptr<const SymbolTable>& InputSymbols() const = 0;
  virtual const std::shared_ptr<const SymbolTable>& OutputSymbols() const = 0;
};

// Read-only lazy view of an eager machine; keys are one-element state ids.
// Arcs are indexed by input label at construction for ArcsWithInput().
std::shared_ptr<const LazyMachine> AsLazy(std::shared_ptr<const Machine> machine);

// Breadth-first expansion of every reachable state. States are numbered in
// discovery order. Throws ResourceError once more than `state_budget` states
// have been discovered.
Machine Materialize(const LazyMachine& machine, std::size_t state_budget);

}  // namespace scenefst::fst

#endif  // SCENEFST_FST_LAZY_MACHINE_H_
