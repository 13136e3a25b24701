#include <benchmark/benchmark.h>

#include <memory>

#include "scenefst/app/synth.h"
#include "scenefst/decoder/decode.h"
#include "scenefst/scene/graph.h"
#include "scenefst/scene/walks.h"
#include "scenefst/stats/label_stats.h"
#include "scenefst/stats/visual.h"

namespace scenefst {
namespace {

struct Fixture {
  std::vector<SuperpixelGrid> test;
  Models models;

  Fixture() {
    SynthSpec spec;
    spec.count = 40;
    const auto train = GenerateScenes(spec);
    spec.seed = 1;
    spec.count = 8;
    test = GenerateScenes(spec);
    VisualTrainOptions vo;
    vo.max_samples = 5000;
    models = {spec.labels, std::make_shared<LabelStats>(LabelStats::Fit(train, spec.labels)),
              std::make_shared<LinearScorer>(FitVisual(train, spec.labels, vo))};
  }
};

const Fixture& Shared() {
  static const Fixture f;
  return f;
}

// 20x20, W = walks, beam = beam width, boundary-pair dependencies.
void BM_Decode20x20(benchmark::State& state) {
  const Fixture& f = Shared();
  DecodeConfig c;
  c.walk_count = static_cast<int>(state.range(0));
  c.beam = static_cast<std::size_t>(state.range(1));
  std::size_t i = 0;
  for (auto _ : state) {
    const Labeling l = Decode(f.test[i++ % f.test.size()], f.models, c);
    benchmark::DoNotOptimize(l.energy);
  }
}
BENCHMARK(BM_Decode20x20)
    ->Args({1, 100})
    ->Args({8, 10})
    ->Args({8, 100})
    ->Args({8, 1000})
    ->Unit(benchmark::kMillisecond);

void BM_DecodeExactMode(benchmark::State& state) {
  const Fixture& f = Shared();
  DecodeConfig c;
  c.dependency_mode = DependencyMode::kExact;
  c.beam = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const Labeling l = Decode(f.test[0], f.models, c);
    benchmark::DoNotOptimize(l.energy);
  }
}
BENCHMARK(BM_DecodeExactMode)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_GenerateWalks(benchmark::State& state) {
  const AdjacencyGraph g(20, 20);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto walks = GenerateWalks(g, static_cast<int>(state.range(0)), seed++);
    benchmark::DoNotOptimize(walks.data());
  }
}
BENCHMARK(BM_GenerateWalks)->Arg(8)->Arg(32);

void BM_TransitionTable(benchmark::State& state) {
  const Fixture& f = Shared();
  const AdjacencyGraph g = BuildGraph(f.test[0]);
  for (auto _ : state) {
    TransitionTable t(g, f.test[0]);
    benchmark::DoNotOptimize(t.Prob(0, 1));
  }
}
BENCHMARK(BM_TransitionTable);

}  // namespace
}  // namespace scenefst
