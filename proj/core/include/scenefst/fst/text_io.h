#ifndef SCENEFST_FST_TEXT_IO_H_
#define SCENEFST_FST_TEXT_IO_H_

#include <iosfwd>
#include <memory>

#include "scenefst/fst/machine.h"

namespace scenefst::fst {

// Line-oriented text form:
//   START <state>
//   <src>\t<dst>\t<ilabel>\t<olabel>\t<weight>   (one line per arc)
//   <state>\t<weight>                           (one line per final state)
// Weights are printed with 9 significant digits.
void WriteText(const Machine& machine, std::ostream& os);

Machine ReadText(std::istream& is, std::shared_ptr<const SymbolTable> input_symbols,
                 std::shared_ptr<const SymbolTable> output_symbols);

}  // namespace scenefst::fst

#endif  // SCENEFST_FST_TEXT_IO_H_
