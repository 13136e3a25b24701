#ifndef SCENEFST_DECODER_DECODE_H_
#define SCENEFST_DECODER_DECODE_H_

#include "scenefst/decoder/config.h"
#include "scenefst/decoder/problem.h"
#include "scenefst/fst/machine.h"

namespace scenefst {

// Shortest path through the composed lattice, turned back into a labeling.
// Throws DecodeError when every path has been pruned.
Labeling Decode(const SceneProblem& problem, const Models& models, const DecodeConfig& config);
Labeling Decode(const SuperpixelGrid& grid, const Models& models, const DecodeConfig& config);

// -log of the joint probability of `labeling`, evaluated factor by factor
// without building any machine. +inf when a factor is zero (including a walk
// outside the walk set). Throws InputError for an inconsistent labeling.
fst::TropicalWeight Energy(const SceneProblem& problem, const Models& models,
                           const DecodeConfig& config, const Labeling& labeling);

// The composed lattice expanded into an eager machine; throws ResourceError
// past `state_budget`.
fst::Machine MaterializeLattice(const SceneProblem& problem, const Models& models,
                                const DecodeConfig& config, std::size_t state_budget);

}  // namespace scenefst

#endif  // SCENEFST_DECODER_DECODE_H_
