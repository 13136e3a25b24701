#ifndef SCENEFST_FST_OPERATIONS_H_
#define SCENEFST_FST_OPERATIONS_H_

#include <span>

#include "scenefst/fst/machine.h"

namespace scenefst::fst {

// Removes states that are not on some start -> final path. State order is
// preserved, so an already trim machine comes back unchanged.
Machine Trim(const Machine& machine);

// Min-union of the member languages. The new start state copies each
// member's start arcs (no epsilon arcs are introduced) and the result is
// trimmed. An empty list yields the empty machine.
Machine Union(std::span<const Machine> machines);

}  // namespace scenefst::fst

#endif  // SCENEFST_FST_OPERATIONS_H_
