#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "scene_fixtures.h"
#include "scenefst/errors.h"
#include "scenefst/stats/label_stats.h"
#include "scenefst/stats/model_io.h"
#include "scenefst/stats/visual.h"

namespace scenefst {
namespace {

std::vector<SuperpixelGrid> TwoGrids() {
  return {testing::UniformGrid(1, 2, 2, {"A", "B"}, "one"),
          testing::UniformGrid(1, 2, 2, {"A", "A"}, "two")};
}

std::vector<CellId> Cells(std::initializer_list<CellId> c) { return c; }

TEST_CASE("unigram and bigram counts of the two-grid set") {
  const auto grids = TwoGrids();
  const LabelStats s = LabelStats::Fit(grids);
  REQUIRE(s.labels() == std::vector<std::string>{"A", "B"});
  CHECK(s.num_images() == 2);
  CHECK(s.unigram(0, 0) == 2);
  CHECK(s.unigram(1, 0) == 0);
  CHECK(s.unigram(0, 1) == 1);
  CHECK(s.unigram(1, 1) == 1);
  CHECK(s.bigram(0, 0, 0, 1) == 1);
  CHECK(s.bigram(0, 1, 0, 1) == 1);
  CHECK(s.bigram(1, 0, 0, 1) == 0);
  CHECK(s.bigram(0, 0, 1, 0) == 1);
  CHECK(s.bigram(1, 0, 1, 0) == 1);
  CHECK(s.CountInvariantsHold());
}

TEST_CASE("single image gives one-hot unigram columns") {
  std::mt19937_64 rng(2);
  const auto g = testing::RandomGrid(rng, 3, 3, 2, {"x", "y", "z"});
  const LabelStats s = LabelStats::Fit(std::span(&g, 1), {"x", "y", "z"});
  for (CellId p = 0; p < 9; ++p) {
    int ones = 0;
    for (LabelId l = 0; l < 3; ++l) {
      CHECK(s.unigram(l, p) <= 1);
      ones += static_cast<int>(s.unigram(l, p));
    }
    CHECK(ones == 1);
    CHECK(s.unigram(*s.FindLabel(g.label(p)), p) == 1);
  }
}

TEST_CASE("fit rejects mismatched geometry by name") {
  std::vector<SuperpixelGrid> grids = TwoGrids();
  grids.push_back(testing::UniformGrid(2, 1, 2, {"A", "B"}, "odd-one"));
  try {
    LabelStats::Fit(grids);
    FAIL("expected an input error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("odd-one") != std::string::npos);
  }
  std::vector<SuperpixelGrid> unlabeled = {testing::UniformGrid(1, 2, 2, {}, "bare")};
  CHECK_THROWS_AS(LabelStats::Fit(unlabeled), InputError);
}

TEST_CASE("unigram probabilities of the two-grid set") {
  const auto grids = TwoGrids();
  const LabelStats s = LabelStats::Fit(grids);
  CHECK(UnigramProb(s, Cells({0}), 0) == 1.0);
  CHECK(UnigramProb(s, Cells({0, 1}), 0) == 0.75);
  CHECK(UnigramProb(s, Cells({0, 1}), 1) == 0.25);
  // alpha = 1: (1 + 2) / (2 + 2) for A at cell 0.
  CHECK(UnigramProb(s, Cells({0}), 0, {.alpha = 1.0}) == 0.75);
  CHECK_THROWS_AS(UnigramProb(s, std::span<const CellId>(), 0), InputError);
  CHECK_THROWS_AS(UnigramProb(s, Cells({2}), 0), InputError);

  const LabelStats empty({"A", "B"}, 1, 2);
  CHECK_THROWS_AS(UnigramProb(empty, Cells({0}), 0), InputError);
}

TEST_CASE("bigram probabilities of the two-grid set") {
  const auto grids = TwoGrids();
  const LabelStats s = LabelStats::Fit(grids);
  CHECK(*BigramProb(s, Cells({1}), Cells({0}), 0, 0) == 0.5);
  CHECK(*BigramProb(s, Cells({1}), Cells({0}), 1, 0) == 0.5);
  // No image has cell 0 labeled B.
  CHECK_FALSE(BigramProb(s, Cells({1}), Cells({0}), 0, 1));
  CHECK(*BigramProb(s, Cells({1}), Cells({0}), 0, 1, {.alpha = 1.0}) == 0.5);
  CHECK_THROWS_AS(BigramProb(s, Cells({0}), Cells({0}), 0, 0), InputError);
  CHECK_THROWS_AS(BigramProb(s, Cells({0, 1}), Cells({1}), 0, 0), InputError);
}

TEST_CASE("uniform training gives uniform unigrams") {
  std::vector<SuperpixelGrid> grids;
  const std::vector<std::string> labels = {"p", "q", "r"};
  for (const auto& l : labels) grids.push_back(testing::UniformGrid(2, 2, 2, {l, l, l, l}));
  const LabelStats s = LabelStats::Fit(grids, labels);
  for (LabelId l = 0; l < 3; ++l) {
    CHECK(UnigramProb(s, Cells({0, 3}), l) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("probabilities normalize over the label argument") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> labels = {"a", "b", "c", "d"};
  std::vector<SuperpixelGrid> grids;
  for (int i = 0; i < 12; ++i) grids.push_back(testing::RandomGrid(rng, 2, 3, 2, labels));
  for (Pooling pooling : {Pooling::kPositional, Pooling::kPooled}) {
    for (double alpha : {0.0, 0.3}) {
      const SmoothingOptions opt{alpha, pooling};
      const LabelStats s = LabelStats::Fit(grids, labels);
      CHECK(s.CountInvariantsHold());
      const std::vector<CellId> seg = {1, 4};
      const std::vector<CellId> prev = {0, 3, 5};
      double total = 0.0;
      for (LabelId l = 0; l < 4; ++l) total += UnigramProb(s, seg, l, opt);
      CHECK(std::abs(total - 1.0) <= 1e-9);
      for (LabelId pl = 0; pl < 4; ++pl) {
        double sum = 0.0;
        bool seen = true;
        for (LabelId l = 0; l < 4; ++l) {
          auto p = BigramProb(s, seg, prev, l, pl, opt);
          if (!p) {
            seen = false;
            break;
          }
          sum += *p;
        }
        if (seen) CHECK(std::abs(sum - 1.0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("independent labels give bigram close to unigram") {
  std::mt19937_64 rng(10);
  const std::vector<std::string> labels = {"a", "b", "c"};
  std::discrete_distribution<int> pick({0.5, 0.3, 0.2});
  std::vector<SuperpixelGrid> grids;
  for (int i = 0; i < 10000; ++i) {
    grids.push_back(testing::UniformGrid(1, 2, 1, {labels[pick(rng)], labels[pick(rng)]}));
  }
  const LabelStats s = LabelStats::Fit(grids, labels);
  for (LabelId pl = 0; pl < 3; ++pl) {
    for (LabelId l = 0; l < 3; ++l) {
      const double bigram = *BigramProb(s, Cells({1}), Cells({0}), l, pl);
      CHECK(std::abs(bigram - UnigramProb(s, Cells({1}), l)) <= 0.02);
    }
  }
}

TEST_CASE("counts rebuild and reject broken marginals") {
  const auto grids = TwoGrids();
  const LabelStats s = LabelStats::Fit(grids);
  const LabelStats back = LabelStats::FromCounts(s.labels(), 1, 2, s.num_images(),
                                                 s.unigram_counts(), s.bigram_counts());
  CHECK(back.bigram_counts() == s.bigram_counts());
  auto broken = s.unigram_counts();
  broken[0] += 1;
  CHECK_THROWS_AS(LabelStats::FromCounts(s.labels(), 1, 2, s.num_images(), broken,
                                         s.bigram_counts()),
                  InputError);
}

TEST_CASE("sigmoid closed forms") {
  CHECK(Sigmoid(0.0) == 0.5);
  CHECK(Sigmoid(std::log(3.0)) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(Sigmoid(800.0) == 1.0);
  CHECK(Sigmoid(-800.0) >= 0.0);
  CHECK(Sigmoid(-800.0) < 1e-300);
  CHECK(Sigmoid(-40.0) > 0.0);
}

// Two labels on disjoint-ish Dirichlet clusters.
std::vector<SuperpixelGrid> Clusters(std::mt19937_64& rng, int count) {
  std::vector<SuperpixelGrid> grids;
  for (int i = 0; i < count; ++i) {
    std::vector<Histogram> f;
    std::vector<std::string> labels;
    for (int c = 0; c < 8; ++c) {
      const bool left = (c + i) % 2 == 0;
      Histogram h(6);
      for (std::size_t d = 0; d < 6; ++d) {
        const bool home = left ? d < 3 : d >= 3;
        h[d] = std::gamma_distribution<double>(home ? 4.0 : 0.3, 1.0)(rng);
      }
      NormalizeL1(h);
      f.push_back(h);
      labels.push_back(left ? "left" : "right");
    }
    grids.emplace_back(2, 4, f, labels);
  }
  return grids;
}

TEST_CASE("visual scorer separates two clusters on held-out data") {
  std::mt19937_64 rng(77);
  const auto train = Clusters(rng, 20);
  const auto test = Clusters(rng, 20);
  const std::vector<std::string> labels = {"left", "right"};
  const LinearScorer scorer = FitVisual(train, labels, {.lambda = 1e-3, .iterations = 30});
  int correct = 0;
  int total = 0;
  for (const auto& g : test) {
    for (CellId c = 0; c < g.size(); ++c) {
      const LabelId guess =
          scorer.Score(g.features(c), 0) >= scorer.Score(g.features(c), 1) ? 0 : 1;
      correct += labels[guess] == g.label(c);
      ++total;
    }
  }
  CHECK(static_cast<double>(correct) / total >= 0.95);
  CHECK(FitVisual(train, labels, {.lambda = 1e-3}).weights(0) == scorer.weights(0));
}

TEST_CASE("visual training needs two present labels") {
  std::mt19937_64 rng(3);
  const std::vector<SuperpixelGrid> one = {testing::RandomGrid(rng, 2, 2, 3, {"only"})};
  CHECK_THROWS_AS(FitVisual(one, {"only", "other"}), InputError);

  const auto train = Clusters(rng, 4);
  const LinearScorer s = FitVisual(train, {"left", "right", "absent"});
  CHECK(s.Score(train[0].features(0), 2) == 0.0);
  CHECK(s.Score(train[0].features(0), 0) != 0.0);
  CHECK_THROWS_AS(FitVisual(train, {"left"}), InputError);
}

TEST_CASE("heavy regularization drives scores toward zero") {
  std::mt19937_64 rng(4);
  const auto train = Clusters(rng, 10);
  const LinearScorer s = FitVisual(train, {"left", "right"}, {.lambda = 1e6});
  for (CellId c = 0; c < train[0].size(); ++c) {
    CHECK(std::abs(s.Score(train[0].features(c), 0)) < 1e-5);
    CHECK(VisualProb(s, train[0].features(c), 1) == doctest::Approx(0.5).epsilon(1e-5));
  }
}

TEST_CASE("logistic gradient matches central differences") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    LogisticProblem p;
    p.features = Eigen::MatrixXd(15, 4);
    p.targets = Eigen::VectorXd(15);
    for (int i = 0; i < 15; ++i) {
      for (int d = 0; d < 4; ++d) p.features(i, d) = std::abs(normal(rng));
      p.targets(i) = normal(rng) > 0 ? 1.0 : -1.0;
    }
    p.lambda = 0.01 * (trial + 1);
    Eigen::VectorXd theta(5);
    for (int d = 0; d < 5; ++d) theta(d) = normal(rng);
    Eigen::VectorXd grad;
    LogisticLoss(p, theta, &grad);
    for (int d = 0; d < 5; ++d) {
      const double h = 1e-5;
      Eigen::VectorXd up = theta;
      Eigen::VectorXd down = theta;
      up(d) += h;
      down(d) -= h;
      const double fd = (LogisticLoss(p, up) - LogisticLoss(p, down)) / (2 * h);
      CHECK(std::abs(fd - grad(d)) <= 1e-5 * std::max(1.0, std::abs(grad(d))));
    }
  }
}

TEST_CASE("kernel scorer prefers the matching exemplars") {
  std::mt19937_64 rng(8);
  const auto train = Clusters(rng, 6);
  const KernelScorer k = FitKernelScorer(train, {"left", "right"}, 40, 5.0, 1);
  const auto test = Clusters(rng, 1);
  for (CellId c = 0; c < test[0].size(); ++c) {
    const LabelId truth = test[0].label(c) == "left" ? 0 : 1;
    CHECK(k.Score(test[0].features(c), truth) > k.Score(test[0].features(c), 1 - truth));
  }
}

TEST_CASE("model files reload bit-exactly") {
  std::mt19937_64 rng(12);
  const std::vector<std::string> labels = {"sky", "sea", "sand"};
  std::vector<SuperpixelGrid> grids;
  for (int i = 0; i < 5; ++i) grids.push_back(testing::RandomGrid(rng, 2, 2, 3, labels));
  SceneModel model;
  model.stats = std::make_shared<LabelStats>(LabelStats::Fit(grids, labels));
  model.scorer = std::make_shared<LinearScorer>(FitVisual(grids, labels));
  model.alpha = 0.1;
  model.lambda = 1e-3;

  std::stringstream first;
  WriteModel(model, first);
  const SceneModel back = ReadModel(first);
  std::stringstream second;
  WriteModel(back, second);
  CHECK(first.str() == second.str());
  CHECK(back.alpha == 0.1);
  CHECK(back.stats->unigram_counts() == model.stats->unigram_counts());
  CHECK(back.stats->bigram_counts() == model.stats->bigram_counts());
  const SmoothingOptions opt{0.1, Pooling::kPositional};
  for (CellId c = 0; c < 4; ++c) {
    for (LabelId l = 0; l < 3; ++l) {
      CHECK(back.scorer->Score(grids[0].features(c), l) ==
            model.scorer->Score(grids[0].features(c), l));
      CHECK(UnigramProb(*back.stats, Cells({c}), l, opt) ==
            UnigramProb(*model.stats, Cells({c}), l, opt));
      if (c > 0) {
        CHECK(*BigramProb(*back.stats, Cells({c}), Cells({0}), l, 1, opt) ==
              *BigramProb(*model.stats, Cells({c}), Cells({0}), l, 1, opt));
      }
    }
  }

  std::stringstream bad("scenefst-model 1\nlabels\t2\tA\n");
  CHECK_THROWS_AS(ReadModel(bad), InputError);
}

}  // namespace
}  // namespace scenefst
