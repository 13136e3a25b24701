#include "fst_oracle.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace scenefst::testing {
namespace {

void Walk(const fst::Machine& m, fst::StateId state, double weight, LabelString& in,
          LabelString& out, std::size_t arcs_left, Relation& result) {
  const fst::TropicalWeight final_weight = m.Final(state);
  if (!final_weight.IsZero()) {
    const double total = weight + final_weight.Value();
    auto [it, inserted] = result.try_emplace({in, out}, total);
    if (!inserted) it->second = std::min(it->second, total);
  }
  if (arcs_left == 0) return;
  for (const fst::Arc& arc : m.Arcs(state)) {
    if (arc.weight.IsZero()) continue;
    if (arc.ilabel != fst::kEpsilon) in.push_back(arc.ilabel);
    if (arc.olabel != fst::kEpsilon) out.push_back(arc.olabel);
    Walk(m, arc.next, weight + arc.weight.Value(), in, out, arcs_left - 1, result);
    if (arc.olabel != fst::kEpsilon) out.pop_back();
    if (arc.ilabel != fst::kEpsilon) in.pop_back();
  }
}

}  // namespace

Relation EnumerateRelation(const fst::Machine& machine, std::size_t max_arcs) {
  Relation result;
  if (machine.Empty()) return result;
  LabelString in;
  LabelString out;
  Walk(machine, machine.Start(), 0.0, in, out, max_arcs, result);
  return result;
}

Relation ComposeRelations(const Relation& a, const Relation& b) {
  std::multimap<LabelString, std::pair<const LabelString*, double>> by_input;
  for (const auto& [strings, weight] : b) {
    by_input.emplace(strings.first, std::make_pair(&strings.second, weight));
  }
  Relation result;
  for (const auto& [strings, weight] : a) {
    auto [lo, hi] = by_input.equal_range(strings.second);
    for (auto it = lo; it != hi; ++it) {
      const double total = weight + it->second.second;
      auto [pos, inserted] = result.try_emplace({strings.first, *it->second.first}, total);
      if (!inserted) pos->second = std::min(pos->second, total);
    }
  }
  return result;
}

fst::TropicalWeight BestPathWeight(const fst::Machine& machine, std::size_t max_arcs) {
  fst::TropicalWeight best = fst::TropicalWeight::Zero();
  for (const auto& [strings, weight] : EnumerateRelation(machine, max_arcs)) {
    best = fst::Plus(best, fst::TropicalWeight(weight));
  }
  return best;
}

std::shared_ptr<const fst::SymbolTable> LetterSymbols(std::size_t count) {
  auto table = std::make_shared<fst::SymbolTable>();
  for (std::size_t i = 0; i < count; ++i) {
    table->AddSymbol(std::string(1, static_cast<char>('a' + i)));
  }
  return table;
}

fst::Machine RandomMachine(std::mt19937_64& rng,
                           std::shared_ptr<const fst::SymbolTable> input_symbols,
                           std::shared_ptr<const fst::SymbolTable> output_symbols,
                           const RandomMachineOptions& options) {
  std::uniform_int_distribution<std::size_t> state_count(options.min_states, options.max_states);
  std::uniform_int_distribution<std::size_t> arc_count(0, options.max_arcs_per_state);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<fst::Label> in_label(1, static_cast<fst::Label>(
                                                            input_symbols->Size() - 1));
  std::uniform_int_distribution<fst::Label> out_label(1, static_cast<fst::Label>(
                                                             output_symbols->Size() - 1));
  auto weight = [&] {
    double w = unit(rng) * options.max_weight;
    if (options.quantized) w = std::floor(w * 4.0) / 4.0;
    return fst::TropicalWeight(w);
  };

  fst::Machine m(input_symbols, output_symbols);
  const std::size_t n = state_count(rng);
  for (std::size_t i = 0; i < n; ++i) m.AddState();
  m.SetStart(0);
  for (std::size_t s = 0; s < n; ++s) {
    if (s + 1 == n || unit(rng) < options.final_prob) m.SetFinal(s, weight());
    if (options.acyclic && s + 1 == n) continue;
    const std::size_t arcs = arc_count(rng);
    for (std::size_t k = 0; k < arcs; ++k) {
      fst::StateId next;
      if (options.acyclic) {
        next = std::uniform_int_distribution<fst::StateId>(
            static_cast<fst::StateId>(s + 1), static_cast<fst::StateId>(n - 1))(rng);
      } else {
        next = std::uniform_int_distribution<fst::StateId>(0, static_cast<fst::StateId>(n - 1))(
            rng);
      }
      const fst::Label il = unit(rng) < options.epsilon_prob ? fst::kEpsilon : in_label(rng);
      const fst::Label ol = unit(rng) < options.epsilon_prob ? fst::kEpsilon : out_label(rng);
      m.AddArc(static_cast<fst::StateId>(s), {il, ol, weight(), next});
    }
  }
  return m;
}

}  // namespace scenefst::testing
