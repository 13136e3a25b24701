#include "scenefst/fst/machine.h"

#include <string>

#include "scenefst/errors.h"

namespace scenefst::fst {

Machine::Machine()
    : Machine(std::make_shared<SymbolTable>(), std::make_shared<SymbolTable>()) {}

Machine::Machine(std::shared_ptr<const SymbolTable> input_symbols,
                 std::shared_ptr<const SymbolTable> output_symbols)
    : input_symbols_(std::move(input_symbols)),
      output_symbols_(std::move(output_symbols)) {
  if (!input_symbols_ || !output_symbols_) {
    throw ConfigError("machine requires input and output symbol tables");
  }
}

StateId Machine::AddState() {
  finals_.push_back(TropicalWeight::Zero());
  arcs_.emplace_back();
  return static_cast<StateId>(arcs_.size() - 1);
}

void Machine::SetStart(StateId state) {
  if (state >= NumStates()) {
    throw ConfigError("start state " + std::to_string(state) + " does not exist");
  }
  start_ = state;
}

void Machine::SetFinal(StateId state, TropicalWeight weight) {
  if (state >= NumStates()) {
    throw ConfigError("final state " + std::to_string(state) + " does not exist");
  }
  finals_[state] = weight;
}

void Machine::AddArc(StateId source, const Arc& arc) {
  if (source >= NumStates() || arc.next >= NumStates()) {
    throw ConfigError("arc references a state that does not exist");
  }
  if (!input_symbols_->Contains(arc.ilabel) || !output_symbols_->Contains(arc.olabel)) {
    throw ConfigError("arc label outside the machine alphabet");
  }
  arcs_[source].push_back(arc);
}

void Machine::ReserveArcs(StateId state, std::size_t count) {
  arcs_.at(state).reserve(count);
}

std::size_t Machine::NumArcs() const {
  std::size_t total = 0;
  for (const auto& arcs : arcs_) total += arcs.size();
  return total;
}

bool Machine::IsAcceptor() const {
  for (const auto& arcs : arcs_) {
    for (const Arc& arc : arcs) {
      if (arc.ilabel != arc.olabel) return false;
    }
  }
  return true;
}

bool operator==(const Machine& a, const Machine& b) {
  return a.start_ == b.start_ && a.finals_ == b.finals_ && a.arcs_ == b.arcs_ &&
         SameAlphabet(a.input_symbols_, b.input_symbols_) &&
         SameAlphabet(a.output_symbols_, b.output_symbols_);
}

bool SameAlphabet(const std::shared_ptr<const SymbolTable>& a,
                  const std::shared_ptr<const SymbolTable>& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace scenefst::fst
