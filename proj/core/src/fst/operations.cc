#include "scenefst/fst/operations.h"

#include <vector>

#include "scenefst/errors.h"

namespace scenefst::fst {

Machine Trim(const Machine& machine) {
  Machine result(machine.InputSymbols(), machine.OutputSymbols());
  if (machine.Empty()) return result;
  const std::size_t n = machine.NumStates();

  std::vector<bool> accessible(n, false);
  std::vector<StateId> stack{machine.Start()};
  accessible[machine.Start()] = true;
  std::vector<std::vector<StateId>> reverse(n);
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (const Arc& arc : machine.Arcs(s)) {
      if (arc.weight.IsZero()) continue;
      reverse[arc.next].push_back(s);
      if (!accessible[arc.next]) {
        accessible[arc.next] = true;
        stack.push_back(arc.next);
      }
    }
  }

  std::vector<bool> coaccessible(n, false);
  for (StateId s = 0; s < n; ++s) {
    if (accessible[s] && !machine.Final(s).IsZero()) {
      coaccessible[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId prev : reverse[s]) {
      if (!coaccessible[prev]) {
        coaccessible[prev] = true;
        stack.push_back(prev);
      }
    }
  }

  if (!coaccessible[machine.Start()]) return result;
  std::vector<StateId> remap(n, kNoState);
  for (StateId s = 0; s < n; ++s) {
    if (accessible[s] && coaccessible[s]) remap[s] = result.AddState();
  }
  for (StateId s = 0; s < n; ++s) {
    if (remap[s] == kNoState) continue;
    result.SetFinal(remap[s], machine.Final(s));
    for (const Arc& arc : machine.Arcs(s)) {
      if (arc.weight.IsZero() || remap[arc.next] == kNoState) continue;
      result.AddArc(remap[s], {arc.ilabel, arc.olabel, arc.weight, remap[arc.next]});
    }
  }
  result.SetStart(remap[machine.Start()]);
  return result;
}

Machine Union(std::span<const Machine> machines) {
  if (machines.empty()) return Machine();
  const auto& in = machines.front().InputSymbols();
  const auto& out = machines.front().OutputSymbols();
  for (const Machine& m : machines) {
    if (!SameAlphabet(m.InputSymbols(), in) || !SameAlphabet(m.OutputSymbols(), out)) {
      throw ConfigError("union: members must share input and output alphabets");
    }
  }

  Machine result(in, out);
  const StateId start = result.AddState();
  result.SetStart(start);
  TropicalWeight start_final = TropicalWeight::Zero();

  for (const Machine& m : machines) {
    if (m.Empty()) continue;
    const auto offset = static_cast<StateId>(result.NumStates());
    for (StateId s = 0; s < m.NumStates(); ++s) result.AddState();
    for (StateId s = 0; s < m.NumStates(); ++s) {
      result.SetFinal(offset + s, m.Final(s));
      for (const Arc& arc : m.Arcs(s)) {
        result.AddArc(offset + s, {arc.ilabel, arc.olabel, arc.weight, offset + arc.next});
      }
    }
    for (const Arc& arc : m.Arcs(m.Start())) {
      result.AddArc(start, {arc.ilabel, arc.olabel, arc.weight, offset + arc.next});
    }
    start_final = Plus(start_final, m.Final(m.Start()));
  }
  result.SetFinal(start, start_final);
  return Trim(result);
}

}  // namespace scenefst::fst
