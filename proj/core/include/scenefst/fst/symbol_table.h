#ifndef SCENEFST_FST_SYMBOL_TABLE_H_
#define SCENEFST_FST_SYMBOL_TABLE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scenefst::fst {

using Label = std::uint32_t;
inline constexpr Label kEpsilon = 0;
inline constexpr std::string_view kEpsilonSymbol = "<eps>";

// Bidirectional string <-> id map. Id 0 is always the epsilon symbol.
class SymbolTable {
 public:
  SymbolTable();

  // Returns the existing id when the symbol is already present.
  Label AddSymbol(std::string_view symbol);

  std::optional<Label> Find(std::string_view symbol) const;
  const std::string& Symbol(Label id) const;
  bool Contains(Label id) const { return id < symbols_.size(); }
  std::size_t Size() const { return symbols_.size(); }

  // Sidecar format: one `symbol<TAB>id` line per entry, ids contiguous.
  void Write(std::ostream& os) const;
  static SymbolTable Read(std::istream& is);

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> ids_;
};

}  // namespace scenefst::fst

#endif  // SCENEFST_FST_SYMBOL_TABLE_H_
