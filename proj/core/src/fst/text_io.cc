#include "scenefst/fst/text_io.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scenefst/errors.h"

namespace scenefst::fst {
namespace {

std::string FormatWeight(TropicalWeight w) {
  if (w.IsZero()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", w.Value());
  return buf;
}

TropicalWeight ParseWeight(const std::string& token, std::size_t line_no) {
  if (token == "inf" || token == "Infinity") return TropicalWeight::Zero();
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return TropicalWeight(value);
  } catch (const std::exception&) {
    throw InputError("machine text line " + std::to_string(line_no) + ": bad weight '" +
                     token + "'");
  }
}

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const auto tab = line.find('\t', begin);
    fields.push_back(line.substr(begin, tab - begin));
    if (tab == std::string::npos) break;
    begin = tab + 1;
  }
  return fields;
}

std::uint64_t ParseIndex(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const auto value = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw InputError("machine text line " + std::to_string(line_no) + ": bad integer '" +
                     token + "'");
  }
}

}  // namespace

void WriteText(const Machine& machine, std::ostream& os) {
  if (machine.Empty()) return;
  os << "START " << machine.Start() << '\n';
  for (StateId s = 0; s < machine.NumStates(); ++s) {
    for (const Arc& arc : machine.Arcs(s)) {
      os << s << '\t' << arc.next << '\t' << arc.ilabel << '\t' << arc.olabel << '\t'
         << FormatWeight(arc.weight) << '\n';
    }
  }
  for (StateId s = 0; s < machine.NumStates(); ++s) {
    if (!machine.Final(s).IsZero()) os << s << '\t' << FormatWeight(machine.Final(s)) << '\n';
  }
}

Machine ReadText(std::istream& is, std::shared_ptr<const SymbolTable> input_symbols,
                 std::shared_ptr<const SymbolTable> output_symbols) {
  Machine machine(std::move(input_symbols), std::move(output_symbols));
  auto ensure = [&](std::uint64_t state) {
    while (machine.NumStates() <= state) machine.AddState();
    return static_cast<StateId>(state);
  };

  std::string line;
  std::size_t line_no = 0;
  std::optional<StateId> start;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("START ", 0) == 0) {
      start = ensure(ParseIndex(line.substr(6), line_no));
      continue;
    }
    const auto fields = SplitTabs(line);
    if (fields.size() == 5) {
      const StateId src = ensure(ParseIndex(fields[0], line_no));
      const StateId dst = ensure(ParseIndex(fields[1], line_no));
      machine.AddArc(src, {static_cast<Label>(ParseIndex(fields[2], line_no)),
                           static_cast<Label>(ParseIndex(fields[3], line_no)),
                           ParseWeight(fields[4], line_no), dst});
    } else if (fields.size() == 2) {
      const StateId s = ensure(ParseIndex(fields[0], line_no));
      machine.SetFinal(s, ParseWeight(fields[1], line_no));
    } else {
      throw InputError("machine text line " + std::to_string(line_no) +
                       ": expected 2 or 5 tab-separated fields");
    }
  }
  if (start) machine.SetStart(*start);
  return machine;
}

}  // namespace scenefst::fst
