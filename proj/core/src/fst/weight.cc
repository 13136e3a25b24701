#include "scenefst/fst/weight.h"

#include <ostream>

namespace scenefst::fst {

std::ostream& operator<<(std::ostream& os, TropicalWeight w) {
  if (w.IsZero()) return os << "inf";
  return os << w.Value();
}

}  // namespace scenefst::fst
