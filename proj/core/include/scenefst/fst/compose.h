#ifndef SCENEFST_FST_COMPOSE_H_
#define SCENEFST_FST_COMPOSE_H_

#include <memory>

#include "scenefst/fst/lazy_machine.h"
#include "scenefst/fst/machine.h"

namespace scenefst::fst {

// On-the-fly composition a o b: a's output feeds b's input. Epsilons are
// matched through the three-state epsilon filter, so every pair of operand
// paths yields exactly one composed path.
//
// Composed keys are laid out as [len(a_key), a_key..., b_key..., filter].
// Throws ConfigError when a's output alphabet differs from b's input alphabet.
std::shared_ptr<const LazyMachine> Compose(std::shared_ptr<const LazyMachine> a,
                                           std::shared_ptr<const LazyMachine> b);

std::shared_ptr<const LazyMachine> Compose(std::shared_ptr<const Machine> a,
                                           std::shared_ptr<const Machine> b);

// Eager product construction with the same filter. Kept separate from the
// lazy path so the two can be cross-checked.
Machine ComposeEager(const Machine& a, const Machine& b);

}  // namespace scenefst::fst

#endif  // SCENEFST_FST_COMPOSE_H_
