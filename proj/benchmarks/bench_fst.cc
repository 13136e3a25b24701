#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <string>

#include "scenefst/fst/compose.h"
#include "scenefst/fst/lazy_machine.h"
#include "scenefst/fst/shortest_path.h"
#include "scenefst/scene/graph.h"

namespace scenefst {
namespace {

using fst::Machine;

std::shared_ptr<const fst::SymbolTable> Letters(int count) {
  auto t = std::make_shared<fst::SymbolTable>();
  for (int i = 0; i < count; ++i) t->AddSymbol("x" + std::to_string(i));
  return t;
}

// Layered machine: `layers` columns of `width` states, full bipartite arcs
// between consecutive columns with random labels and weights.
Machine Layered(int layers, int width, const std::shared_ptr<const fst::SymbolTable>& syms,
                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<fst::Label> label(1, static_cast<fst::Label>(syms->Size() - 1));
  std::uniform_real_distribution<double> weight(0.0, 3.0);
  Machine m(syms, syms);
  const fst::StateId start = m.AddState();
  m.SetStart(start);
  std::vector<fst::StateId> prev = {start};
  for (int l = 0; l < layers; ++l) {
    std::vector<fst::StateId> cur;
    for (int w = 0; w < width; ++w) cur.push_back(m.AddState());
    for (fst::StateId p : prev) {
      for (fst::StateId c : cur) {
        const fst::Label x = label(rng);
        m.AddArc(p, {x, label(rng), fst::TropicalWeight(weight(rng)), c});
      }
    }
    prev = cur;
  }
  for (fst::StateId p : prev) m.SetFinal(p, fst::TropicalWeight::One());
  return m;
}

void BM_ComposeMaterialize(benchmark::State& state) {
  const auto syms = Letters(4);
  const auto a = std::make_shared<Machine>(Layered(10, static_cast<int>(state.range(0)), syms, 1));
  const auto b = std::make_shared<Machine>(Layered(10, static_cast<int>(state.range(0)), syms, 2));
  for (auto _ : state) {
    const Machine c = fst::Materialize(*fst::Compose(a, b), 10'000'000);
    benchmark::DoNotOptimize(c.NumStates());
  }
}
BENCHMARK(BM_ComposeMaterialize)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ComposeEager(benchmark::State& state) {
  const auto syms = Letters(4);
  const Machine a = Layered(10, static_cast<int>(state.range(0)), syms, 1);
  const Machine b = Layered(10, static_cast<int>(state.range(0)), syms, 2);
  for (auto _ : state) {
    const Machine c = fst::ComposeEager(a, b);
    benchmark::DoNotOptimize(c.NumStates());
  }
}
BENCHMARK(BM_ComposeEager)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ShortestPathLazy(benchmark::State& state) {
  const auto syms = Letters(4);
  const auto a = std::make_shared<Machine>(Layered(10, 8, syms, 1));
  const auto b = std::make_shared<Machine>(Layered(10, 8, syms, 2));
  const auto lazy = fst::Compose(a, b);
  fst::ShortestPathOptions opts;
  if (state.range(0) > 0) opts.beam = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto path = fst::ShortestPath(*lazy, opts);
    benchmark::DoNotOptimize(path);
  }
}
BENCHMARK(BM_ShortestPathLazy)->Arg(0)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_HistogramIntersection(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(state.range(0)));
  std::vector<double> b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = u(rng);
    b[i] = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(HistogramIntersection(a, b));
}
BENCHMARK(BM_HistogramIntersection)->Arg(16)->Arg(256);

}  // namespace
}  // namespace scenefst
