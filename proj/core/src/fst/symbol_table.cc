#include "scenefst/fst/symbol_table.h"

#include <charconv>
#include <istream>
#include <ostream>

#include "scenefst/errors.h"

namespace scenefst::fst {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  std::string key(symbol);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  const auto id = static_cast<Label>(symbols_.size());
  symbols_.push_back(key);
  ids_.emplace(std::move(key), id);
  return id;
}

std::optional<Label> SymbolTable::Find(std::string_view symbol) const {
  if (auto it = ids_.find(std::string(symbol)); it != ids_.end()) return it->second;
  return std::nullopt;
}

const std::string& SymbolTable::Symbol(Label id) const {
  if (id >= symbols_.size()) {
    throw InputError("symbol id " + std::to_string(id) + " out of range");
  }
  return symbols_[id];
}

void SymbolTable::Write(std::ostream& os) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    os << symbols_[i] << '\t' << i << '\n';
  }
}

SymbolTable SymbolTable::Read(std::istream& is) {
  SymbolTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw InputError("symbol table line " + std::to_string(line_no) + ": missing tab");
    }
    Label id = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    if (auto [ptr, ec] = std::from_chars(first, last, id); ec != std::errc() || ptr != last) {
      throw InputError("symbol table line " + std::to_string(line_no) + ": bad id");
    }
    const std::string_view symbol(line.data(), tab);
    if (id == kEpsilon) {
      if (symbol != kEpsilonSymbol) {
        throw InputError("symbol table: id 0 must be " + std::string(kEpsilonSymbol));
      }
      continue;
    }
    if (id != table.Size() || table.Find(symbol)) {
      throw InputError("symbol table line " + std::to_string(line_no) +
                       ": ids must be contiguous and symbols unique");
    }
    table.AddSymbol(symbol);
  }
  return table;
}

}  // namespace scenefst::fst
