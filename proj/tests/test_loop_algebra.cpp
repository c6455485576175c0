#include "affind/loop_algebra.hpp"
#include "affind/subalgebra.hpp"

#include "doctest.h"

using namespace affind;

TEST_CASE("bracket examples") {
  const LoopAlgebra g(1);
  const auto e = g.parse_symbol("E[1,-1;m=1]");
  const auto f = g.parse_symbol("E[-1,1;m=-1]");
  CHECK(g.bracket(e, f) == LieElement(Symbol::h(0, 0)) + LieElement(Symbol::c()));
  CHECK(g.bracket(Symbol::h(0, 2), Symbol::h(0, -2)) == LieElement(Symbol::c(), 4));
  CHECK(g.bracket(Symbol::c(), Symbol::e(0, 1, 5)).is_zero());
  CHECK(g.bracket(Symbol::d(), Symbol::e(1, 0, -3)) == LieElement(Symbol::e(1, 0, -3), -3));
  CHECK(g.bracket(Symbol::h(0, 2), Symbol::e(1, 0, -2)) == LieElement(Symbol::e(1, 0, 0), -2));
}

TEST_CASE("symbol strings round trip") {
  const LoopAlgebra g(2);
  for (const auto& s : g.basis_window(2)) CHECK(g.parse_symbol(g.str(s)) == s);
  CHECK(g.str(Symbol::e(0, 2, 2)) == "E[1,0,-1;m=2]");
  CHECK(g.str(Symbol::e(1, 0, -1)) == "E[-1,1,0;m=-1]");
  CHECK(g.str(Symbol::h(1, -3)) == "H[2;m=-3]");
}

TEST_CASE("invariant form") {
  const LoopAlgebra a1(1), a2(2);
  CHECK(a1.invariant_form(Symbol::h(0, 0), Symbol::h(0, 0)) == 2);
  CHECK(a1.invariant_form(Symbol::e(0, 1, 0), Symbol::e(0, 1, 0)) == 0);
  CHECK(a2.invariant_form(Symbol::h(0, 0), Symbol::h(1, 0)) == -1);
  // invariance on a sample
  const auto w = a2.basis_window(1);
  for (const auto& x : w)
    for (const auto& y : w)
      for (const auto& z : w) {
        if (!x.is_loop() || !y.is_loop() || !z.is_loop()) continue;
        if (x.m + y.m + z.m != 0) continue;
        CHECK(a2.invariant_form(a2.bracket(x, y), LieElement(z)) + a2.invariant_form(LieElement(y), a2.bracket(x, z)) == 0);
      }
}

TEST_CASE("heisenberg basis") {
  const LoopAlgebra a1(1), a2(2);
  CHECK(a1.heisenberg_basis(1).pairing(0, 0) == 2);
  CHECK(a1.heisenberg_basis(3).pairing(0, 0) == 6);
  const auto hb = a2.heisenberg_basis(1);
  CHECK(hb.pairing(0, 1) == -1);
  CHECK(hb.pairing(1, 1) == 2);
  CHECK_THROWS(a1.heisenberg_basis(0));
  // dual rows realize [H(i,k), x_{-k,j}] = δ_ij c
  const auto hb2 = a2.heisenberg_basis(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      LieElement x;
      for (int q = 0; q < 2; ++q) x.add(Symbol::h(q, -2), hb2.dual(j, q));
      CHECK(a2.bracket(LieElement(Symbol::h(i, 2)), x) == (i == j ? LieElement(Symbol::c()) : LieElement()));
    }
}

TEST_CASE("antisymmetry, grading and Heisenberg relations") {
  for (int n : {1, 2}) {
    const LoopAlgebra g(n);
    const auto w = g.basis_window(3);
    for (const auto& x : w)
      for (const auto& y : w) {
        const auto xy = g.bracket(x, y);
        CHECK(xy == -g.bracket(y, x));
        for (const auto& [s, c] : xy)
          if (s.kind != Symbol::C) CHECK(g.degree(s) == g.degree(x) + g.degree(y));
        if (x.kind == Symbol::H && y.kind == Symbol::H && x.m != 0 && y.m != 0) {
          if (x.m + y.m != 0)
            CHECK(xy.is_zero());
          else
            for (const auto& [s, c] : xy) CHECK(s.kind == Symbol::C);
        }
      }
  }
}

TEST_CASE("twisted types are not realized") {
  CHECK_THROWS_AS(LoopAlgebra(AffineType::parse("A2^2")), NotSupported);
  CHECK_THROWS_AS(LoopAlgebra(AffineType::parse("B3^1")), NotSupported);
}

TEST_CASE("parabolic decomposition A2, J={1}") {
  const LoopAlgebra g(2);
  const Parabolic p(g, {1});
  REQUIRE(p.gj_dim() == 1);
  CHECK(p.gj_rows()(0, 0) == 1);
  CHECK(p.gj_rows()(0, 1) == 2);
  CHECK(p.classify(Symbol::e(2, 0, -3)) == Tag::NJbar);
  CHECK(p.classify(Symbol::e(0, 2, -3)) == Tag::NJ);
  CHECK(p.classify(Symbol::e(1, 0, 4)) == Tag::L0);
  CHECK(p.classify(Symbol::h(0, 2)) == Tag::L0);
  CHECK(p.classify(Symbol::h(1, 2)) == Tag::MixedImaginary);
  CHECK(p.classify(Symbol::h(1, 0)) == Tag::CartanOnly);
  CHECK(p.classify(Symbol::c()) == Tag::Center);
  // H(2,k) = -1/2 H(1,k) + 1/2 (H(1,k)+2H(2,k))
  CHECK(p.split(1).levi[0] == Rational(-1, 2));
  CHECK(p.split(1).gj[0] == Rational(1, 2));
  CHECK_THROWS(Parabolic(g, {1, 2}));
  CHECK_THROWS(Parabolic(g, {3}));
}

TEST_CASE("parabolic J empty") {
  const LoopAlgebra g(1);
  const Parabolic p(g, {});
  for (int m = -3; m <= 3; ++m) {
    CHECK(p.classify(Symbol::e(0, 1, m)) == Tag::NJ);
    CHECK(p.classify(Symbol::e(1, 0, m)) == Tag::NJbar);
    if (m != 0) CHECK(p.classify(Symbol::h(0, m)) == Tag::GJ);
  }
}

TEST_CASE("borel membership") {
  BorelSpec nat;
  CHECK_FALSE(borel_membership(Symbol::h(0, -2), nat));
  BorelSpec tw;
  tw.phi.set(2, '-');
  CHECK(borel_membership(Symbol::h(0, -2), tw));
  CHECK(borel_membership(Symbol::e(0, 1, -9), tw));
  BorelSpec sp;
  sp.split = std::map<std::pair<int, int>, char>{{{1, 2}, '-'}};
  const LoopAlgebra g(2);
  CHECK(borel_membership(Symbol::h(0, 1), sp));
  CHECK(borel_membership(Symbol::h(1, -1), sp));
  for (const BorelSpec* b : {&nat, &tw, &sp})
    for (const auto& s : g.basis_window(3)) {
      if (s.is_cartan()) {
        CHECK(borel_membership(s, *b));
        continue;
      }
      CHECK(borel_membership(s, *b) != borel_membership(g.flip(s), *b));
    }
}

TEST_CASE("Lie axioms on windows") {
  const LoopAlgebra a1(1);
  const auto r = lie_axiom_check(a1, 2);
  CHECK(r.ok());
  CHECK(r.triples == r.pairs * 17);
  const LoopAlgebra a2(2);
  const auto s = lie_axiom_check(a2, 3, 1000, 5);
  CHECK(s.ok());
  CHECK(s.triples == 1000);
}

TEST_CASE("decomposition certificates") {
  const LoopAlgebra a2(2);
  const auto r = decomposition_certificates(Parabolic(a2, {1}), 3, 5);
  CHECK_MESSAGE(r.ok(), r.first_failure);
  const LoopAlgebra a3(3);
  for (NodeSet J : {NodeSet{}, NodeSet{1}, NodeSet{1, 3}, NodeSet{2, 3}}) {
    const auto q = decomposition_certificates(Parabolic(a3, J), 2, 3);
    CHECK_MESSAGE(q.ok(), q.first_failure);
  }
}
