#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "fst_oracle.h"
#include "scenefst/errors.h"
#include "scenefst/fst/compose.h"
#include "scenefst/fst/lazy_machine.h"
#include "scenefst/fst/machine.h"
#include "scenefst/fst/operations.h"
#include "scenefst/fst/shortest_path.h"
#include "scenefst/fst/text_io.h"
#include "scenefst/fst/weight.h"

namespace scenefst {
namespace {

using fst::Arc;
using fst::Machine;
using fst::TropicalWeight;
using testing::EnumerateRelation;
using testing::LetterSymbols;
using testing::Relation;

TropicalWeight W(double v) { return TropicalWeight(v); }

// Linear machine over `symbols` accepting `labels` (as input and output).
Machine Linear(const std::shared_ptr<const fst::SymbolTable>& symbols,
               const std::vector<fst::Label>& labels, std::vector<double> weights,
               double final_weight = 0.0) {
  Machine m(symbols, symbols);
  fst::StateId s = m.AddState();
  m.SetStart(s);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const fst::StateId t = m.AddState();
    m.AddArc(s, {labels[i], labels[i], W(weights[i]), t});
    s = t;
  }
  m.SetFinal(s, W(final_weight));
  return m;
}

void CheckSameRelation(const Relation& a, const Relation& b, double tol) {
  REQUIRE(a.size() == b.size());
  auto it = b.begin();
  for (const auto& [strings, weight] : a) {
    CHECK(strings == it->first);
    CHECK(std::abs(weight - it->second) <= tol);
    ++it;
  }
}

TEST_CASE("tropical weights reject negatives and NaN") {
  CHECK_THROWS_AS(TropicalWeight(-0.5), std::domain_error);
  CHECK_THROWS_AS(TropicalWeight(std::nan("")), std::domain_error);
  CHECK(TropicalWeight(TropicalWeight::kInfinity).IsZero());
  CHECK(TropicalWeight::FromProbability(1.0) == TropicalWeight::One());
  CHECK(TropicalWeight::FromProbability(0.0).IsZero());
  CHECK(TropicalWeight::FromProbability(0.5).Value() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("tropical semiring axioms on random triples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(0.0, 50.0);
  std::bernoulli_distribution infinite(0.1);
  auto draw = [&] { return infinite(rng) ? TropicalWeight::Zero() : W(value(rng)); };
  const TropicalWeight zero = TropicalWeight::Zero();
  const TropicalWeight one = TropicalWeight::One();
  for (int i = 0; i < 1000; ++i) {
    const TropicalWeight a = draw();
    const TropicalWeight b = draw();
    const TropicalWeight c = draw();
    CHECK(Plus(Plus(a, b), c) == Plus(a, Plus(b, c)));
    CHECK(Plus(a, b) == Plus(b, a));
    CHECK(Plus(a, a) == a);
    CHECK(Plus(a, zero) == a);
    CHECK(Times(a, one) == a);
    CHECK(Times(one, a) == a);
    CHECK(Times(a, zero).IsZero());
    CHECK(Times(zero, a).IsZero());
    CHECK(Times(a, Plus(b, c)) == Plus(Times(a, b), Times(a, c)));
    CHECK(Times(Plus(a, b), c) == Plus(Times(a, c), Times(b, c)));
    // Times is float addition, so associativity is checked on a grid where
    // sums are exact.
    auto grid = [](TropicalWeight w) { return w.IsZero() ? w : W(std::floor(w.Value()) / 4); };
    const TropicalWeight qa = grid(a);
    const TropicalWeight qb = grid(b);
    const TropicalWeight qc = grid(c);
    CHECK(Times(Times(qa, qb), qc) == Times(qa, Times(qb, qc)));
  }
}

TEST_CASE("log weights sum probabilities") {
  const auto half = fst::LogWeight::FromProbability(0.5);
  CHECK(Plus(half, half).Probability() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(Times(half, half).Probability() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(Plus(fst::LogWeight::Zero(), half).Value() == half.Value());
}

TEST_CASE("machine rejects unknown states and symbols") {
  auto syms = LetterSymbols(2);
  Machine m(syms, syms);
  const auto s = m.AddState();
  CHECK_THROWS_AS(m.AddArc(s, {1, 1, W(0), 5}), ConfigError);
  CHECK_THROWS_AS(m.AddArc(s, {9, 1, W(0), s}), ConfigError);
  CHECK_THROWS_AS(m.SetStart(3), ConfigError);
  m.AddArc(s, {1, 1, W(0), s});
  CHECK(m.IsAcceptor());
  m.AddArc(s, {1, 2, W(0), s});
  CHECK_FALSE(m.IsAcceptor());
}

TEST_CASE("compose: two-arc path through a relabelling machine weighs 3.75") {
  auto ab = LetterSymbols(2);
  auto xy = std::make_shared<fst::SymbolTable>();
  const auto x = xy->AddSymbol("x");
  const auto y = xy->AddSymbol("y");

  Machine a(ab, ab);
  for (int i = 0; i < 3; ++i) a.AddState();
  a.SetStart(0);
  a.AddArc(0, {1, 1, W(1.0), 1});
  a.AddArc(1, {2, 2, W(2.0), 2});
  a.SetFinal(2, W(0));

  Machine b(ab, xy);
  b.AddState();
  b.SetStart(0);
  b.AddArc(0, {1, x, W(0.5), 0});
  b.AddArc(0, {2, y, W(0.25), 0});
  b.SetFinal(0, W(0));

  const Machine composed = fst::Materialize(
      *fst::Compose(std::make_shared<Machine>(a), std::make_shared<Machine>(b)), 100);
  const Relation rel = EnumerateRelation(composed, 10);
  REQUIRE(rel.size() == 1);
  CHECK(rel.begin()->first.first == std::vector<fst::Label>{1, 2});
  CHECK(rel.begin()->first.second == std::vector<fst::Label>{x, y});
  CHECK(rel.begin()->second == 3.75);

  auto path = fst::ShortestPath(composed);
  REQUIRE(path);
  CHECK(path->weight.Value() == 3.75);
}

TEST_CASE("compose with a zero-weight identity keeps the language") {
  std::mt19937_64 rng(11);
  auto syms = LetterSymbols(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Machine a = testing::RandomMachine(rng, syms, syms);
    Machine id(syms, syms);
    id.AddState();
    id.SetStart(0);
    id.SetFinal(0, W(0));
    for (fst::Label l = 1; l < syms->Size(); ++l) id.AddArc(0, {l, l, W(0), 0});
    const Machine composed =
        fst::Materialize(*fst::Compose(std::make_shared<Machine>(a), std::make_shared<Machine>(id)),
                         1000);
    CheckSameRelation(EnumerateRelation(a, 8), EnumerateRelation(composed, 16), 0.0);
  }
}

TEST_CASE("compose matches the path-enumeration oracle on random pairs") {
  std::mt19937_64 rng(2024);
  auto syms = LetterSymbols(3);
  testing::RandomMachineOptions opts;
  opts.epsilon_prob = 0.3;
  for (int trial = 0; trial < 50; ++trial) {
    const Machine a = testing::RandomMachine(rng, syms, syms, opts);
    const Machine b = testing::RandomMachine(rng, syms, syms, opts);
    const Relation expected =
        testing::ComposeRelations(EnumerateRelation(a, 5), EnumerateRelation(b, 5));
    const Machine lazy = fst::Materialize(
        *fst::Compose(std::make_shared<Machine>(a), std::make_shared<Machine>(b)), 10000);
    CheckSameRelation(EnumerateRelation(lazy, 10), expected, 1e-12);
    CHECK(fst::ComposeEager(a, b) == lazy);
  }
}

TEST_CASE("compose is associative on the language level") {
  std::mt19937_64 rng(99);
  auto syms = LetterSymbols(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = std::make_shared<Machine>(testing::RandomMachine(rng, syms, syms));
    auto b = std::make_shared<Machine>(testing::RandomMachine(rng, syms, syms));
    auto c = std::make_shared<Machine>(testing::RandomMachine(rng, syms, syms));
    const Machine left =
        fst::Materialize(*fst::Compose(fst::Compose(a, b), fst::AsLazy(c)), 100000);
    const Machine right =
        fst::Materialize(*fst::Compose(fst::AsLazy(a), fst::Compose(b, c)), 100000);
    CheckSameRelation(EnumerateRelation(left, 15), EnumerateRelation(right, 15), 1e-12);
  }
}

TEST_CASE("compose rejects mismatched alphabets") {
  auto two = LetterSymbols(2);
  auto three = LetterSymbols(3);
  auto a = std::make_shared<Machine>(two, two);
  auto b = std::make_shared<Machine>(three, three);
  CHECK_THROWS_AS(fst::Compose(a, b), ConfigError);
  CHECK_THROWS_AS(fst::ComposeEager(*a, *b), ConfigError);
}

TEST_CASE("shortest path picks the lighter of two parallel paths") {
  auto syms = LetterSymbols(2);
  Machine m(syms, syms);
  m.AddState();
  m.AddState();
  m.SetStart(0);
  m.SetFinal(1, W(0));
  m.AddArc(0, {1, 1, W(5), 1});
  m.AddArc(0, {2, 2, W(3), 1});
  auto path = fst::ShortestPath(m);
  REQUIRE(path);
  CHECK(path->weight.Value() == 3.0);
  REQUIRE(path->arcs.size() == 1);
  CHECK(path->arcs[0].ilabel == 2);
}

TEST_CASE("shortest path on a single path returns it") {
  auto syms = LetterSymbols(3);
  const Machine m = Linear(syms, {1, 2, 3}, {0.5, 1.25, 2.0}, 0.25);
  auto path = fst::ShortestPath(m);
  REQUIRE(path);
  CHECK(path->weight.Value() == 4.0);
  REQUIRE(path->arcs.size() == 3);
  CHECK(path->arcs[2].ilabel == 3);
  CHECK(path->final_weight.Value() == 0.25);
}

TEST_CASE("shortest path reports an empty language") {
  auto syms = LetterSymbols(1);
  Machine m(syms, syms);
  CHECK_FALSE(fst::ShortestPath(m));
  m.AddState();
  m.AddState();
  m.SetStart(0);
  m.AddArc(0, {1, 1, W(1), 1});
  CHECK_FALSE(fst::ShortestPath(m));
  CHECK_FALSE(fst::ShortestPath(m, {.beam = 4}));
}

TEST_CASE("shortest path equals enumeration on random acyclic machines") {
  std::mt19937_64 rng(5);
  auto syms = LetterSymbols(3);
  testing::RandomMachineOptions opts;
  opts.min_states = 2;
  opts.max_states = 10;
  for (int trial = 0; trial < 50; ++trial) {
    const Machine m = testing::RandomMachine(rng, syms, syms, opts);
    const TropicalWeight expected = testing::BestPathWeight(m, 10);
    auto path = fst::ShortestPath(m);
    if (expected.IsZero()) {
      CHECK_FALSE(path);
      continue;
    }
    REQUIRE(path);
    CHECK(std::abs(path->weight.Value() - expected.Value()) <= 1e-12);
    CHECK(std::abs(fst::PathWeight(*path).Value() - path->weight.Value()) <= 1e-12);
  }
}

TEST_CASE("beam search reports the recomputed weight of its path") {
  std::mt19937_64 rng(8);
  auto syms = LetterSymbols(3);
  testing::RandomMachineOptions opts;
  opts.min_states = 4;
  opts.max_states = 10;
  for (int trial = 0; trial < 50; ++trial) {
    const Machine m = testing::RandomMachine(rng, syms, syms, opts);
    const TropicalWeight exact = testing::BestPathWeight(m, 10);
    for (std::size_t beam : {1, 2, 100}) {
      auto path = fst::ShortestPath(m, {.beam = beam});
      if (!path) continue;
      CHECK(std::abs(fst::PathWeight(*path).Value() - path->weight.Value()) <= 1e-12);
      CHECK(path->weight.Value() >= exact.Value() - 1e-12);
      if (beam == 100) CHECK(std::abs(path->weight.Value() - exact.Value()) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(fst::ShortestPath(Linear(syms, {1}, {1}), {.beam = 0}), ConfigError);
}

TEST_CASE("deterministic ties repeat, seeded ties vary with the seed") {
  auto syms = LetterSymbols(3);
  Machine m(syms, syms);
  m.AddState();
  m.AddState();
  m.SetStart(0);
  m.SetFinal(1, W(0));
  for (fst::Label l = 1; l <= 3; ++l) m.AddArc(0, {l, l, W(1), 1});

  auto first = fst::ShortestPath(m);
  REQUIRE(first);
  CHECK(first->arcs[0].ilabel == 1);
  CHECK(fst::ShortestPath(m)->arcs[0].ilabel == 1);

  std::vector<int> seen(4, 0);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    fst::ShortestPathOptions opts{.tie_break = fst::TieBreak::kSeeded, .seed = seed};
    auto path = fst::ShortestPath(m, opts);
    REQUIRE(path);
    CHECK(path->weight.Value() == 1.0);
    ++seen[path->arcs[0].ilabel];
    CHECK(fst::ShortestPath(m, opts)->arcs[0].ilabel == path->arcs[0].ilabel);
  }
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
  CHECK(seen[3] > 0);
}

TEST_CASE("trim drops unreachable and dead states") {
  auto syms = LetterSymbols(2);
  Machine m = Linear(syms, {1, 2}, {1, 2});
  const auto orphan = m.AddState();
  m.AddArc(orphan, {1, 1, W(0), 0});
  const auto dead = m.AddState();
  m.AddArc(0, {2, 2, W(0), dead});
  const Machine trimmed = fst::Trim(m);
  CHECK(trimmed.NumStates() == 3);
  CheckSameRelation(EnumerateRelation(m, 6), EnumerateRelation(trimmed, 6), 0.0);

  const Machine already = Linear(syms, {1, 2}, {1, 2});
  CHECK(fst::Trim(already) == already);
}

TEST_CASE("trim keeps the language of random machines") {
  std::mt19937_64 rng(3);
  auto syms = LetterSymbols(3);
  testing::RandomMachineOptions opts;
  opts.max_states = 7;
  opts.final_prob = 0.1;
  for (int trial = 0; trial < 30; ++trial) {
    const Machine m = testing::RandomMachine(rng, syms, syms, opts);
    const Machine t = fst::Trim(m);
    CheckSameRelation(EnumerateRelation(m, 8), EnumerateRelation(t, 8), 0.0);
    CHECK(fst::Trim(t) == t);
  }
}

TEST_CASE("union takes the min over member languages") {
  auto syms = LetterSymbols(4);
  std::vector<Machine> two = {Linear(syms, {1, 2}, {0.5, 0.5}), Linear(syms, {3, 4}, {1, 1})};
  const Relation rel = EnumerateRelation(fst::Union(two), 4);
  REQUIRE(rel.size() == 2);
  CHECK(rel.at({{1, 2}, {1, 2}}) == 1.0);
  CHECK(rel.at({{3, 4}, {3, 4}}) == 2.0);

  std::vector<Machine> one = {Linear(syms, {2, 3, 1}, {0.25, 0.5, 1}, 0.5)};
  CheckSameRelation(EnumerateRelation(one[0], 5), EnumerateRelation(fst::Union(one), 5), 0.0);
  CHECK(fst::Union(std::span<const Machine>()).Empty());

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<fst::Label> label(1, 2);
  std::uniform_real_distribution<double> weight(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Machine> three;
    Relation expected;
    for (int k = 0; k < 3; ++k) {
      std::vector<fst::Label> labels(1 + trial % 3);
      std::vector<double> weights;
      for (auto& l : labels) {
        l = label(rng);
        weights.push_back(weight(rng));
      }
      three.push_back(Linear(syms, labels, weights));
      for (const auto& [k2, v] : EnumerateRelation(three.back(), 4)) {
        auto [it, inserted] = expected.try_emplace(k2, v);
        if (!inserted) it->second = std::min(it->second, v);
      }
    }
    CheckSameRelation(EnumerateRelation(fst::Union(three), 4), expected, 0.0);
  }
}

TEST_CASE("materialize round-trips an eager machine and honours the budget") {
  auto syms = LetterSymbols(2);
  const Machine m = Linear(syms, {1}, {0.5});
  const auto lazy = fst::AsLazy(std::make_shared<Machine>(m));
  CHECK(fst::Materialize(*lazy, 2) == m);
  CHECK_THROWS_AS(fst::Materialize(*lazy, 1), ResourceError);
}

TEST_CASE("text form round-trips with nine significant digits") {
  auto syms = LetterSymbols(2);
  Machine m = Linear(syms, {1, 2}, {0.125, 2.5}, 1.0 / 3.0);
  std::stringstream ss;
  fst::WriteText(m, ss);
  CHECK(ss.str().rfind("START 0\n", 0) == 0);
  const Machine back = fst::ReadText(ss, syms, syms);
  REQUIRE(back.NumStates() == 3);
  CHECK(back.Arcs(0)[0] == m.Arcs(0)[0]);
  CHECK(back.Final(2).Value() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  std::stringstream table;
  syms->Write(table);
  CHECK(fst::SymbolTable::Read(table) == *syms);

  std::stringstream bad("START 0\n0\t1\t1\t1\theavy\n");
  CHECK_THROWS_AS(fst::ReadText(bad, syms, syms), InputError);
}

}  // namespace
}  // namespace scenefst
