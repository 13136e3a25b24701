#ifndef SCENEFST_DECODER_MACHINES_H_
#define SCENEFST_DECODER_MACHINES_H_

#include <memory>
#include <span>

#include "scenefst/decoder/config.h"
#include "scenefst/decoder/problem.h"
#include "scenefst/fst/lazy_machine.h"
#include "scenefst/fst/machine.h"

namespace scenefst {

// Symbol tables of the decoding cascade:
//   cells:  <eps>, s0 .. s{n-1}, #     (R in/out, G in/out, D in)
//   pairs:  <eps>, s{p}/<label>        (D out, V in)
//   labels: <eps>, <label>...          (V out)
struct DecoderAlphabets {
  std::shared_ptr<const fst::SymbolTable> cells;
  std::shared_ptr<const fst::SymbolTable> pairs;
  std::shared_ptr<const fst::SymbolTable> labels;
  std::size_t num_cells = 0;
  std::size_t num_labels = 0;

  fst::Label CellSymbol(CellId c) const { return c + 1; }
  fst::Label BoundarySymbol() const { return static_cast<fst::Label>(num_cells + 1); }
  fst::Label PairSymbol(CellId c, LabelId l) const {
    return static_cast<fst::Label>(1 + c * num_labels + l);
  }
  fst::Label LabelSymbol(LabelId l) const { return l + 1; }
};

DecoderAlphabets MakeAlphabets(std::size_t num_cells, const std::vector<std::string>& labels);

// R: acceptor holding one linear path per walk; the first arc of each walk
// carries -log P(Pi). Throws InputError for an empty walk list or a walk of
// the wrong length.
fst::Machine BuildReordering(std::span<const Walk> walks, const DecoderAlphabets& alphabets,
                             double walk_prob);

// G: copies cell symbols and may insert `#` between them. Opening a segment
// costs -log(1/n), continuing u -> v costs -log P(v | u), and P(K) is paid
// on the final weight. Keys: [0] start, [1] after `#`, [2 + u] inside a
// segment whose last cell is u.
std::shared_ptr<const fst::LazyMachine> BuildGrouping(const SceneProblem& problem,
                                                      const DecodeConfig& config,
                                                      const DecoderAlphabets& alphabets);

// D: reads segmented cell strings and writes one (cell, label) pair per
// cell, labelling every cell of a segment alike; `#` maps to epsilon.
std::shared_ptr<const fst::LazyMachine> BuildDependency(const Models& models,
                                                        const DecodeConfig& config,
                                                        const DecoderAlphabets& alphabets);

// V: one state; maps (cell, label) to label with -log P(X_cell | label).
fst::Machine BuildVisual(const Models& models, const SuperpixelGrid& grid,
                         const DecodeConfig& config, const DecoderAlphabets& alphabets);

// R o G o D o V, composed lazily.
std::shared_ptr<const fst::LazyMachine> BuildLattice(const SceneProblem& problem,
                                                     const Models& models,
                                                     const DecodeConfig& config);

}  // namespace scenefst

#endif  // SCENEFST_DECODER_MACHINES_H_
