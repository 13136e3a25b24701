// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fst_oracle.h"
#include "scene_fixtures.h"
#include "scenefst/app/ablation.h"
#include "scenefst/app/evaluation.h"
#include "scenefst/app/synth.h"
#include "scenefst/decoder/decode.h"
#include "scenefst/fst/compose.h"
#include "scenefst/fst/shortest_path.h"
#include "scenefst/oracle/oracle.h"
#include "scenefst/stats/label_stats.h"
#include "scenefst/stats/model_io.h"
#include "scenefst/stats/visual.h"

namespace scenefst {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome OracleEquivalence() {
  constexpr int kInstances = 100;
  constexpr double kTolerance = 1e-9;
  constexpr double kBudgetSeconds = 30.0;
  const auto start = Clock::now();
  int matched = 0;
  double worst = 0.0;
  for (int seed = 0; seed < kInstances; ++seed) {
    const testing::TinyInstance t = testing::MakeTinyInstance(static_cast<std::uint64_t>(seed));
    const SceneProblem problem(t.grid, t.config);
    const OracleResult oracle = EnumerateBest(problem, t.models, t.config);
    const Labeling decoded = Decode(problem, t.models, t.config);
    const double gap = std::abs(decoded.energy.Value() - oracle.best.Value());
    worst = std::max(worst, gap);
    if (gap <= kTolerance && oracle.Contains(decoded)) ++matched;
  }
  const double elapsed = Seconds(start);
  return {matched == kInstances && elapsed < kBudgetSeconds,
          Format("%d/%d instances match, max gap %.2e, %.1f s", matched, kInstances, worst,
                 elapsed)};
}

Outcome WfstSuite() {
  constexpr double kBudgetSeconds = 10.0;
  const auto start = Clock::now();
  using fst::TropicalWeight;

  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::bernoulli_distribution infinite(0.05);
  // Quarter-grid values keep float addition exact, so every axiom is an
  // equality.
  auto draw = [&] {
    return infinite(rng) ? TropicalWeight::Zero() : TropicalWeight(std::floor(value(rng) * 4) / 4);
  };
  int axiom_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const TropicalWeight a = draw(), b = draw(), c = draw();
    const TropicalWeight zero = TropicalWeight::Zero(), one = TropicalWeight::One();
    const bool ok =
        Plus(Plus(a, b), c) == Plus(a, Plus(b, c)) && Plus(a, b) == Plus(b, a) &&
        Plus(a, a) == a && Plus(a, zero) == a && Times(Times(a, b), c) == Times(a, Times(b, c)) &&
        Times(a, one) == a && Times(one, a) == a &&
        Times(a, Plus(b, c)) == Plus(Times(a, b), Times(a, c)) &&
        Times(Plus(a, b), c) == Plus(Times(a, c), Times(b, c)) && Times(a, zero).IsZero() &&
        Times(zero, a).IsZero();
    axiom_failures += !ok;
  }

  auto syms = testing::LetterSymbols(3);
  testing::RandomMachineOptions pair_opts;
  pair_opts.max_states = 4;
  pair_opts.epsilon_prob = 0.3;
  int compose_failures = 0;
  for (int i = 0; i < 50; ++i) {
    const fst::Machine a = testing::RandomMachine(rng, syms, syms, pair_opts);
    const fst::Machine b = testing::RandomMachine(rng, syms, syms, pair_opts);
    const testing::Relation expected = testing::ComposeRelations(testing::EnumerateRelation(a, 5),
                                                                 testing::EnumerateRelation(b, 5));
    const fst::Machine composed = fst::Materialize(
        *fst::Compose(std::make_shared<fst::Machine>(a), std::make_shared<fst::Machine>(b)),
        100000);
    const testing::Relation got = testing::EnumerateRelation(composed, 10);
    bool ok = got.size() == expected.size();
    for (auto it = got.begin(), jt = expected.begin(); ok && it != got.end(); ++it, ++jt) {
      ok = it->first == jt->first && std::abs(it->second - jt->second) <= 1e-12;
    }
    compose_failures += !ok;
  }

  testing::RandomMachineOptions dag_opts;
  dag_opts.min_states = 8;
  dag_opts.max_states = 8;
  int path_failures = 0;
  for (int i = 0; i < 50; ++i) {
    const fst::Machine m = testing::RandomMachine(rng, syms, syms, dag_opts);
    const TropicalWeight expected = testing::BestPathWeight(m, 8);
    const auto path = fst::ShortestPath(m);
    const bool ok = expected.IsZero()
                        ? !path
                        : path && std::abs(path->weight.Value() - expected.Value()) <= 1e-12 &&
                              std::abs(fst::PathWeight(*path).Value() -
                                       path->weight.Value()) <= 1e-12;
    path_failures += !ok;
  }
  const double elapsed = Seconds(start);
  return {axiom_failures + compose_failures + path_failures == 0 && elapsed < kBudgetSeconds,
          Format("axioms %d/1000, compose %d/50, shortest path %d/50 failures, %.1f s",
                 axiom_failures, compose_failures, path_failures, elapsed)};
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kLabels = {"sky", "sea", "sand", "sun"};

EvalReport Score(std::span<const SuperpixelGrid> scenes, const Models& models,
                 const DecodeConfig& config) {
  Evaluator eval(kLabels);
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    const Labeling l = Decode(scenes[i], models, ForScene(config, i));
    eval.Add(CellLabelNames(l, models), scenes[i].labels());
  }
  return eval.Report();
}

Outcome ChanceBaseline() {
  SynthSpec spec;
  spec.seed = 7000;
  spec.count = 50;
  const auto scenes = GenerateScenes(spec);
  const Models models = FlatModels(kLabels);
  DecodeConfig off = AblationLines(DecodeConfig())[0].config;
  off.seed = 11;
  DecodeConfig on = off;
  on.reorder = true;

  const EvalReport r_off = Score(scenes, models, off);
  const EvalReport r_on = Score(scenes, models, on);
  auto near = [](double v, double target, double tol) { return std::abs(v - target) <= tol; };
  const bool chance = near(r_off.mean_far, 25, 5) && near(r_off.mean_frr, 75, 5) &&
                      near(r_off.mean_eer, 50, 5);
  const bool same = near(r_on.mean_far, r_off.mean_far, 2) &&
                    near(r_on.mean_frr, r_off.mean_frr, 2) &&
                    near(r_on.mean_eer, r_off.mean_eer, 2);
  return {chance && same,
          Format("reorder off FAR/FRR/EER %.2f/%.2f/%.2f, on %.2f/%.2f/%.2f", r_off.mean_far,
                 r_off.mean_frr, r_off.mean_eer, r_on.mean_far, r_on.mean_frr, r_on.mean_eer)};
}

struct Benchmark {
  std::vector<SuperpixelGrid> train;
  std::vector<SuperpixelGrid> test;
  SceneModel model;
};

Benchmark MakeBenchmark(int seed) {
  Benchmark b;
  SynthSpec train;
  train.count = 100;
  train.seed = 1000 + static_cast<std::uint64_t>(seed);
  SynthSpec test = train;
  test.seed = 5000 + static_cast<std::uint64_t>(seed);
  b.train = GenerateScenes(train);
  b.test = GenerateScenes(test);
  b.model.stats = std::make_shared<LabelStats>(LabelStats::Fit(b.train, kLabels));
  VisualTrainOptions vo;
  vo.max_samples = 20000;
  vo.seed = static_cast<std::uint64_t>(seed);
  b.model.scorer = std::make_shared<LinearScorer>(FitVisual(b.train, kLabels, vo));
  b.model.lambda = vo.lambda;
  return b;
}

Outcome AblationTrend(const std::vector<Benchmark>& benches) {
  constexpr int kRequired = 8;
  const std::vector<int> lines = {1, 2, 4, 7, 10};
  int trend_a = 0;
  int trend_b = 0;
  std::string per_seed;
  const auto start = Clock::now();
  for (std::size_t s = 0; s < benches.size(); ++s) {
    const Benchmark& b = benches[s];
    DecodeConfig base;
    base.seed = s;
    const auto rows = RunAblation(b.test, ModelsFrom(b.model), base, lines);
    std::map<int, double> eer;
    for (const auto& r : rows) eer[r.setting.line] = r.report.mean_eer;
    const bool a = eer[4] < eer[2] && eer[2] < eer[1];
    const bool o = eer[10] <= eer[7] && eer[7] <= eer[4];
    trend_a += a;
    trend_b += o;
    std::printf("      seed %zu: EER L1 %.2f  L2 %.2f  L4 %.2f  L7 %.2f  L10 %.2f  (a)%s (b)%s\n", s,
                eer[1], eer[2], eer[4], eer[7], eer[10], a ? "ok" : "NO", o ? "ok" : "NO");
    std::fflush(stdout);
  }
  const int n = static_cast<int>(benches.size());
  return {trend_a >= kRequired && trend_b >= kRequired,
          Format("(a) L4<L2<L1 in %d/%d seeds, (b) L10<=L7<=L4 in %d/%d seeds, %.0f s", trend_a,
                 n, trend_b, n, Seconds(start))};
}

Outcome Runtime(const Benchmark& b) {
  constexpr double kBudgetSeconds = 2.0;
  DecodeConfig c;  // W=8, beam 100, boundary-pair
  double worst = 0.0;
  std::size_t segments = 0;
  for (int i = 0; i < 5; ++i) {
    const auto start = Clock::now();
    const Labeling l = Decode(b.test[static_cast<std::size_t>(i)], ModelsFrom(b.model), c);
    worst = std::max(worst, Seconds(start));
    segments = l.num_segments();
  }
  return {worst < kBudgetSeconds,
          Format("slowest of 5 decodes (20x20, 4 labels, W=8, beam 100) %.3f s, K=%zu", worst,
                 segments)};
}

// ---------------------------------------------------------------------------

bool Normalized(const LabelStats& stats, std::mt19937_64& rng, double* worst) {
  if (!stats.CountInvariantsHold()) return false;
  const std::size_t n = stats.num_cells();
  const std::size_t labels = stats.num_labels();
  auto segment = [&](std::vector<CellId>& out, std::size_t size, const std::vector<CellId>& avoid) {
    out.clear();
    while (out.size() < size) {
      const auto c = static_cast<CellId>(rng() % n);
      if (std::find(out.begin(), out.end(), c) == out.end() &&
          std::find(avoid.begin(), avoid.end(), c) == avoid.end()) {
        out.push_back(c);
      }
    }
  };
  std::vector<CellId> seg;
  std::vector<CellId> prev;
  for (int trial = 0; trial < 40; ++trial) {
    const SmoothingOptions opt{trial % 2 ? 0.5 : 0.0,
                               trial % 4 < 2 ? Pooling::kPositional : Pooling::kPooled};
    if (n == 1) {
      seg = {0};
      prev.clear();
    } else {
      segment(prev, 1 + rng() % std::min<std::size_t>(n - 1, 6), {});
      segment(seg, 1 + rng() % std::min<std::size_t>(n - prev.size(), 6), prev);
    }
    double total = 0.0;
    for (LabelId l = 0; l < labels; ++l) total += UnigramProb(stats, seg, l, opt);
    *worst = std::max(*worst, std::abs(total - 1.0));
    if (prev.empty()) continue;
    for (LabelId pl = 0; pl < labels; ++pl) {
      double sum = 0.0;
      bool seen = true;
      for (LabelId l = 0; l < labels && seen; ++l) {
        const auto p = BigramProb(stats, seg, prev, l, pl, opt);
        seen = p.has_value();
        if (seen) sum += *p;
      }
      if (seen) *worst = std::max(*worst, std::abs(sum - 1.0));
    }
  }
  return *worst <= 1e-9;
}

Outcome ModelConsistency(const std::vector<Benchmark>& benches) {
  std::mt19937_64 rng(99);
  int models = 0;
  int good = 0;
  double worst = 0.0;
  for (const Benchmark& b : benches) {
    ++models;
    good += Normalized(*b.model.stats, rng, &worst);
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto t = testing::MakeTinyInstance(seed);
    ++models;
    good += Normalized(*t.models.stats, rng, &worst);
  }

  // Gradient of the logistic loss on real synthetic features.
  int gradient_ok = 0;
  double worst_rel = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Benchmark& b = benches[static_cast<std::size_t>(i) % benches.size()];
    const SuperpixelGrid& g = b.train[static_cast<std::size_t>(i)];
    LogisticProblem p;
    p.features = Eigen::MatrixXd(static_cast<Eigen::Index>(g.size()),
                                 static_cast<Eigen::Index>(g.dim()));
    p.targets = Eigen::VectorXd(static_cast<Eigen::Index>(g.size()));
    for (CellId c = 0; c < g.size(); ++c) {
      for (std::size_t d = 0; d < g.dim(); ++d) {
        p.features(c, static_cast<Eigen::Index>(d)) = g.features(c)[d];
      }
      p.targets(c) = g.label(c) == kLabels[static_cast<std::size_t>(i) % 4] ? 1.0 : -1.0;
    }
    p.lambda = 1e-3 * (1 + i);
    std::normal_distribution<double> normal(0.0, 2.0);
    Eigen::VectorXd theta(static_cast<Eigen::Index>(g.dim() + 1));
    for (Eigen::Index d = 0; d < theta.size(); ++d) theta(d) = normal(rng);
    Eigen::VectorXd grad;
    LogisticLoss(p, theta, &grad);
    Eigen::VectorXd fd(theta.size());
    const double h = 1e-5;
    for (Eigen::Index d = 0; d < theta.size(); ++d) {
      Eigen::VectorXd up = theta, down = theta;
      up(d) += h;
      down(d) -= h;
      fd(d) = (LogisticLoss(p, up) - LogisticLoss(p, down)) / (2 * h);
    }
    const double rel = (fd - grad).norm() / grad.norm();
    worst_rel = std::max(worst_rel, rel);
    gradient_ok += rel <= 1e-5;
  }
  return {good == models && gradient_ok == 20,
          Format("%d/%d models normalized (max error %.1e) with exact marginals, gradient "
                 "%d/20 (max rel error %.1e)",
                 good, models, worst, gradient_ok, worst_rel)};
}

int Run(const std::string& args) {
  const std::string cmd = std::string(SCENEFST_CLI) + " -q " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome Determinism(const Benchmark& b) {
  // In-process: save, reload, decode, compare against the in-memory model.
  const fs::path dir = testing::TempDir("acceptance");
  SaveModel(b.model, dir / "model.txt");
  const SceneModel loaded = LoadModel(dir / "model.txt");
  int identical = 0;
  const int scenes = 10;
  for (int i = 0; i < scenes; ++i) {
    const DecodeConfig c = ForScene(DecodeConfig(), static_cast<std::size_t>(i));
    const auto& grid = b.test[static_cast<std::size_t>(i)];
    const Labeling x = Decode(grid, ModelsFrom(b.model), c);
    const Labeling y = Decode(grid, ModelsFrom(loaded), c);
    identical += x.cell_labels == y.cell_labels && x == y && x.energy == y.energy;
  }

  // Through the command line: every seeded command twice.
  int cli_failures = 0;
  auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
  for (const char* run : {"r1", "r2"}) {
    const fs::path r = dir / run;
    cli_failures += Run("synth --out " + q(r / "train") + " --count 8 --rows 8 --cols 6 --seed 3") != 0;
    cli_failures += Run("synth --out " + q(r / "test") + " --count 3 --rows 8 --cols 6 --seed 4") != 0;
    cli_failures += Run("train " + q(r / "train") + " --out " + q(r / "m.txt") +
                        " --seed 5 --max-samples 200") != 0;
    cli_failures += Run("decode " + q(r / "test") + " --model " + q(r / "m.txt") + " --out " +
                        q(r / "dec") + " --tie-break rand --seed 6 --render") != 0;
    cli_failures += Run("eval --pred " + q(r / "dec") + " --truth " + q(r / "test") + " --out " +
                        q(r / "eval.tsv")) != 0;
    cli_failures += Run("ablate " + q(r / "test") + " --model " + q(r / "m.txt") + " --out " +
                        q(r / "ablate.tsv") + " --seed 6") != 0;
  }
  int files = 0;
  int differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "r1")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const fs::path twin = dir / "r2" / fs::relative(entry.path(), dir / "r1");
    differing += testing::ReadFile(entry.path()) != testing::ReadFile(twin);
  }
  fs::remove_all(dir);
  return {identical == scenes && cli_failures == 0 && differing == 0 && files > 0,
          Format("reloaded model decodes %d/%d scenes identically; %d output files, %d differ, "
                 "%d command failures",
                 identical, scenes, files, differing, cli_failures)};
}

}  // namespace
}  // namespace scenefst

int main() {
  using namespace scenefst;
  int failed = 0;
  auto report = [&](int id, const char* name, const Outcome& o) {
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  };

  report(1, "oracle equivalence", OracleEquivalence());
  report(2, "wfst correctness", WfstSuite());
  report(3, "chance baseline", ChanceBaseline());

  std::vector<Benchmark> benches;
  for (int seed = 0; seed < 10; ++seed) benches.push_back(MakeBenchmark(seed));
  report(4, "ablation trend", AblationTrend(benches));
  report(5, "runtime", Runtime(benches[0]));
  report(6, "model consistency", ModelConsistency(benches));
  report(7, "determinism and persistence", Determinism(benches[0]));

  std::printf("%d of 7 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
