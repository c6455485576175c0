#include "affind/experiment.hpp"
#include "affind/verifier.hpp"

#include "doctest.h"

using namespace affind;

namespace {

ExperimentSpec a1_fock(Rational a, TruncationWindow w = {3, 2, 0}) {
  ExperimentSpec s;
  s.type = AffineType::parse("A1^1");
  s.module.kind = "fock";
  s.module.charge = a;
  s.window = w;
  return s;
}

ExperimentSpec a2_tensor(TruncationWindow w) {
  ExperimentSpec s;
  s.type = AffineType::parse("A2^1");
  s.J = {1};
  s.window = w;
  return s;
}

}  // namespace

TEST_CASE("invariants: top is invariant, nothing below it at a=1") {
  Experiment e(a1_fock(1, {4, 2, 0}));
  const TruncationWindow w{4, 2, 0};
  const auto top = invariants(*e.M(), e.parabolic(), Degree::zero(1), w);
  CHECK(top.kernel.size() == top.space.size());
  CHECK(top.verified);
  const auto below = invariants(*e.M(), e.parabolic(), Degree{{-1}, -1}, w);
  CHECK(below.space.size() > 0);
  CHECK(below.kernel.empty());
}

TEST_CASE("invariants are sound") {
  Experiment e(a2_tensor({2, 1, 0}));
  const TruncationWindow w{2, 1, 0};
  for (const auto& [mu, ids] : e.M()->window_basis(w).spaces) {
    const auto s = invariants(*e.M(), e.parabolic(), mu, w);
    CHECK(s.verified);
    for (const auto& v : s.kernel)
      for (const auto& g : nj_generators(e.parabolic(), w)) CHECK(e.M()->act(g, v).empty());
  }
}

TEST_CASE("invariants refuse an overflowed window") {
  Experiment e(a1_fock(1));
  CHECK_THROWS_AS(invariants(*e.M(), e.parabolic(), Degree{{-1}, 0}, {3, 2, 2}), Refusal);
}

TEST_CASE("invariants equal the top on A1 and A2 windows") {
  {
    Experiment e(a1_fock(1));
    const auto r = theorem2_report(*e.M(), e.parabolic(), {3, 2, 0});
    CHECK(r.verdict == Verdict::Pass);
    for (const auto& w : r.per_weight)
      if (!w.weight.finite_zero()) CHECK(w.dim_invariants == 0);
  }
  {
    auto s = a1_fock(1);
    s.module.phi.set(1, '-').set(2, '+');
    Experiment e(s);
    CHECK(theorem2_report(*e.M(), e.parabolic(), {3, 2, 0}).verdict == Verdict::Pass);
  }
  {
    Experiment e(a2_tensor({2, 2, 0}));
    const auto r = theorem2_report(*e.M(), e.parabolic(), {2, 2, 0});
    CHECK(r.verdict == Verdict::Pass);
    for (const auto& w : r.per_weight) CHECK(w.dim_invariants == w.expected_top_dim);
  }
}

TEST_CASE("invariant check refuses at charge 0") {
  Experiment e(a1_fock(0));
  CHECK(theorem2_report(*e.M(), e.parabolic(), {3, 2, 0}).verdict == Verdict::Inconclusive);
}

TEST_CASE("descend_height") {
  Experiment e(a1_fock(1));
  const auto& M = *e.M();
  const TruncationWindow w{3, 2, 0};
  const ModuleVector v2 = M.act(Symbol::e(1, 0, 0), M.act(Symbol::e(1, 0, -1), M.lift(M.inner().top())));
  const auto s2 = descend_height(M, e.parabolic(), v2, w);
  REQUIRE(s2);
  CHECK(s2->height == 1);
  CHECK(s2->u.i == 0);
  CHECK(s2->u.j == 1);

  for (int k = -2; k <= 2; ++k) {
    const ModuleVector v1 = M.act(Symbol::e(1, 0, k), M.lift(M.inner().top()));
    const auto s1 = descend_height(M, e.parabolic(), v1, w);
    REQUIRE(s1);
    CHECK(s1->height == 0);
    CHECK(M.weight(s1->uv.begin()->first).finite_zero());
  }
  CHECK_THROWS_AS(descend_height(M, e.parabolic(), M.lift(M.inner().top()), w), std::invalid_argument);
}

TEST_CASE("heisenberg nonvanishing table") {
  const LoopAlgebra g(1);
  auto W = FockModule::full(g, {1, {}});
  const auto r1 = lemma_heis_check(*W, W->top(), {{{-1, 0}}}, 2, 8);
  CHECK(r1.holds);
  CHECK(r1.rows.size() == 7);
  const auto r2 = lemma_heis_check(*W, W->top(), {{{-1, 0}}, {{-3, 0}}}, 4, 8);
  CHECK(r2.holds);
  const auto r0 = lemma_heis_check(*W, W->top(), {}, 1, 5);
  for (const auto& row : r0.rows) {
    CHECK_FALSE(row.plus_nonzero);
    CHECK(row.minus_nonzero);
  }
  CHECK_THROWS(lemma_heis_check(*W, W->top(), {{{-1, 0}}, {{-1, 0}}}, 2, 8));
  CHECK_THROWS(lemma_heis_check(*W, W->top(), {{{1, 0}}}, 2, 8));
  auto W0 = FockModule::full(g, {0, {}});
  CHECK_THROWS(lemma_heis_check(*W0, W0->top(), {{{-1, 0}}}, 2, 8));
}

TEST_CASE("irreducibility probe") {
  Experiment e(a1_fock(1));
  const auto r = irreducibility_probe(*e.M(), e.parabolic(), {3, 2, 0});
  CHECK(r.verdict == Irreducibility::IrreducibleAtWindow);
  CHECK(r.vectors == e.M()->window_basis({3, 2, 0}).total());

  Experiment z(a1_fock(0));
  const auto rz = irreducibility_probe(*z.M(), z.parabolic(), {3, 2, 0});
  CHECK(rz.verdict == Irreducibility::ReducibleWithWitness);
  CHECK_FALSE(rz.witness.empty());
  CHECK_FALSE(rz.certificate.empty());

  const auto rt = irreducibility_probe(*e.M(), e.parabolic(), {0, 0, 0});
  CHECK(rt.verdict == Irreducibility::IrreducibleAtWindow);
  CHECK(rt.trivial_window);
}

TEST_CASE("parallel invariant check matches serial") {
  Experiment e(a2_tensor({1, 2, 0}));
  const auto serial = theorem2_report(*e.M(), e.parabolic(), {1, 2, 0});
  setenv("AFFIND_THREADS", "3", 1);
  Experiment f(a2_tensor({1, 2, 0}));
  const auto par = theorem2_report(*f.M(), f.parabolic(), {1, 2, 0});
  unsetenv("AFFIND_THREADS");
  REQUIRE(serial.per_weight.size() == par.per_weight.size());
  for (std::size_t i = 0; i < serial.per_weight.size(); ++i) {
    CHECK(serial.per_weight[i].weight == par.per_weight[i].weight);
    CHECK(serial.per_weight[i].dim_invariants == par.per_weight[i].dim_invariants);
  }
}
