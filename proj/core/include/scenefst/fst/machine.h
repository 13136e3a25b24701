#ifndef SCENEFST_FST_MACHINE_H_
#define SCENEFST_FST_MACHINE_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "scenefst/fst/symbol_table.h"
#include "scenefst/fst/weight.h"

namespace scenefst::fst {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  TropicalWeight weight = TropicalWeight::One();
  StateId next = kNoState;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Eagerly stored weighted transducer. Built through the mutators, then shared
// as `const` (usually via std::shared_ptr<const Machine>).
class Machine {
 public:
  Machine();
  Machine(std::shared_ptr<const SymbolTable> input_symbols,
          std::shared_ptr<const SymbolTable> output_symbols);

  StateId AddState();
  void SetStart(StateId state);
  void SetFinal(StateId state, TropicalWeight weight);
  // Throws ConfigError for unknown states or symbols outside the alphabets.
  void AddArc(StateId source, const Arc& arc);
  void ReserveArcs(StateId state, std::size_t count);

  StateId Start() const { return start_; }
  std::size_t NumStates() const { return arcs_.size(); }
  std::size_t NumArcs() const;
  TropicalWeight Final(StateId state) const { return finals_.at(state); }
  std::span<const Arc> Arcs(StateId state) const { return arcs_.at(state); }
  bool Empty() const { return start_ == kNoState; }
  bool IsAcceptor() const;

  const std::shared_ptr<const SymbolTable>& InputSymbols() const {
    return input_symbols_;
  }
  const std::shared_ptr<const SymbolTable>& OutputSymbols() const {
    return output_symbols_;
  }

  friend bool operator==(const Machine& a, const Machine& b);

 private:
  StateId start_ = kNoState;
  std::vector<TropicalWeight> finals_;
  std::vector<std::vector<Arc>> arcs_;
  std::shared_ptr<const SymbolTable> input_symbols_;
  std::shared_ptr<const SymbolTable> output_symbols_;
};

// True when both tables are the same object or hold identical symbols.
bool SameAlphabet(const std::shared_ptr<const SymbolTable>& a,
                  const std::shared_ptr<const SymbolTable>& b);

}  // namespace scenefst::fst

#endif  // SCENEFST_FST_MACHINE_H_
