#include "affind/fock.hpp"
#include "affind/induced.hpp"
#include "affind/tensor.hpp"

#include "doctest.h"

using namespace affind;

namespace {

struct Setup {
  std::unique_ptr<LoopAlgebra> g;
  std::unique_ptr<Parabolic> P;
  std::shared_ptr<const WeightModule> V;
  std::shared_ptr<FockModule> W;
  std::shared_ptr<TensorModule> N;
  std::shared_ptr<InducedModule> M;
};

Setup make(int rank, NodeSet J, Rational a, PhiTable phi = {}, HighestWeight hw = {}) {
  Setup s;
  s.g = std::make_unique<LoopAlgebra>(rank);
  s.P = std::make_unique<Parabolic>(*s.g, J);
  if (hw.h.empty()) hw = generic_weight(rank, 7);
  auto C = std::make_shared<OneDimModule>(*s.g, hw, a);
  if (J.empty())
    s.V = C;
  else
    s.V = std::make_shared<InducedModule>(*s.g, std::make_shared<LeviVermaSplitting>(*s.P), C, TotalBound::Size);
  s.W = FockModule::over_gj(*s.P, {a, phi});
  s.N = std::make_shared<TensorModule>(*s.P, s.V, s.W);
  s.M = std::make_shared<InducedModule>(*s.g, std::make_shared<ParabolicSplitting>(*s.P), s.N, TotalBound::Delta);
  return s;
}

Degree deg(std::vector<int> f, int d) { return Degree{std::move(f), d}; }

}  // namespace

TEST_CASE("Fock action examples") {
  const LoopAlgebra g(1);
  auto W = FockModule::full(g, {1, {}});
  const LabelId x1 = W->intern({{-1, 0}});
  CHECK(W->act(Symbol::h(0, 1), x1) == ModuleVector{{W->top(), Rational(2)}});
  CHECK(W->act(Symbol::c(), x1) == ModuleVector{{x1, Rational(1)}});
  PhiTable phi;
  phi.set(2, '-');
  auto Wt = FockModule::full(g, {1, phi});
  CHECK(Wt->act(Symbol::h(0, -2), Wt->top()).empty());
  CHECK(Wt->label(Wt->intern({{2, 0}, {-1, 0}, {-1, 0}})) == "x[-1,1]^2 x[2,1] |0>");
  CHECK_THROWS_AS(W->act(Symbol::e(0, 1, 0), x1), NotInAlgebra);
}

TEST_CASE("Fock character routes agree") {
  const LoopAlgebra g(2);
  PhiTable phi('-');
  phi.set(2, '+');
  for (const PhiTable& p : {PhiTable(), phi}) {
    auto W = FockModule::full(g, {Rational(3, 2), p});
    for (int D = 0; D <= 5; ++D) {
      const TruncationWindow w{D, 0, 0};
      CHECK(character_from(W->window_basis(w)) == character_from(W->window_counts(w)));
    }
  }
}

TEST_CASE("Fock representation, irreducibility and a=0 reducibility") {
  const LoopAlgebra g(1);
  auto W = FockModule::full(g, {1, {}});
  const TruncationWindow w4{4, 0, 0};
  std::vector<LabelId> labels;
  for (const auto& [mu, ids] : W->window_basis(w4).spaces) labels.insert(labels.end(), ids.begin(), ids.end());
  const auto syms = g.basis_window(2);
  CHECK(representation_check(*W, syms, syms, labels).ok());

  // a product of annihilators brings every monomial of grade <= 6 to a nonzero multiple of |0>
  for (const auto& [mu, ids] : W->window_basis({6, 0, 0}).spaces)
    for (LabelId id : ids) {
      ModuleVector v{{id, Rational(1)}};
      for (const auto& [m, t] : W->key(id)) v = W->act_mode(t, -m, v);
      REQUIRE(v.size() == 1);
      CHECK(v.begin()->first == W->top());
    }

  auto W0 = FockModule::full(g, {0, {}});
  const LabelId x1 = W0->intern({{-1, 0}});
  for (const auto& s : g.basis_window(4)) {
    if (!W0->acts(s)) continue;
    const auto r = W0->act(s, x1);
    CHECK(r.count(W0->top()) == 0);
  }
}

TEST_CASE("admissible probe") {
  const LoopAlgebra g(1);
  auto W = FockModule::full(g, {1, {}});
  auto r = admissible_probe(*W, 1, 4);
  CHECK(r.verdict == AdmissibleVerdict::EvidenceAdmissible);
  CHECK(r.direction == "-");
  PhiTable phi;
  phi.set(1, '-');
  auto Wt = FockModule::full(g, {1, phi});
  auto rt = admissible_probe(*Wt, 1, 4);
  CHECK(rt.verdict == AdmissibleVerdict::EvidenceAdmissible);
  CHECK(rt.direction == "+");
  CHECK_THROWS(admissible_probe(*W, 0, 4));
}

TEST_CASE("induced action examples, A1 J=empty") {
  auto s = make(1, {}, 1);
  const auto& M = *s.M;
  const Rational lam = generic_weight(1, 7).h[0];
  const LabelId vac = M.top();
  const ModuleVector f0 = M.act(Symbol::e(1, 0, 0), vac);
  CHECK(M.act(Symbol::e(0, 1, 0), f0) == ModuleVector{{vac, lam}});
  const ModuleVector f2 = M.act(Symbol::e(1, 0, -2), vac);
  const ModuleVector r = M.act(Symbol::h(0, 2), f2);
  CHECK(r == scaled(f0, -2));
  CHECK(M.act(Symbol::c(), f2) == f2);
}

TEST_CASE("weight spaces and characters") {
  auto s = make(1, {}, 1);
  const TruncationWindow w{3, 2, 0};
  const auto b = weight_space_basis(*s.M, deg({0}, 0), w);
  CHECK(b.labels.size() == 1);
  CHECK(weight_space_basis(*s.M, deg({-1}, 0), w).labels.size() == 7);
  CHECK(weight_space_basis(*s.M, deg({0}, 1), w).labels.empty());
  CHECK(character(*s.M, w) == character_from(s.M->window_basis(w)));
  CHECK(character(*s.M, w).at(deg({-1}, 0)) == 7);

  auto t = make(2, {1}, 1);
  for (int D = 0; D <= 3; ++D)
    for (int H = 0; H <= 2; ++H) {
      const TruncationWindow win{D, H, 0};
      CHECK(character(*t.M, win) == character_from(t.M->window_basis(win)));
    }
  const TruncationWindow w0{0, 1, 0};
  CHECK(character(*t.M, w0).at(deg({0, -1}, 0)) == character(*t.N, w0).at(deg({0, 0}, 0)));
}

TEST_CASE("freeness and mutation") {
  auto s = make(1, {}, 1);
  for (int D = 0; D <= 2; ++D)
    for (int H = 0; H <= 2; ++H) CHECK(freeness_check(*s.M, {D, H, 0}).free);
  auto bad = std::make_shared<InducedModule>(*s.g, std::make_shared<ParabolicSplitting>(*s.P), s.N, TotalBound::Delta,
                                             StraighteningFault::DropReorderedTerm);
  CHECK_FALSE(freeness_check(*bad, {2, 2, 0}).free);
}

TEST_CASE("representation property on M, A1 J=empty") {
  auto s = make(1, {}, 1);
  std::vector<LabelId> labels;
  for (const auto& [mu, ids] : s.M->window_basis({2, 2, 0}).spaces) labels.insert(labels.end(), ids.begin(), ids.end());
  const auto syms = s.g->basis_window(1);
  const auto rep = representation_check(*s.M, syms, syms, labels);
  CHECK_MESSAGE(rep.ok(), rep.first_failure);
}

TEST_CASE("representation property catches a dropped central term") {
  LoopAlgebra g(1, BracketFault::DropCentralTerm);
  Parabolic P(g, {});
  auto C = std::make_shared<OneDimModule>(g, generic_weight(1, 3), 1);
  auto W = FockModule::over_gj(P, {1, {}});
  auto N = std::make_shared<TensorModule>(P, C, W);
  InducedModule M(g, std::make_shared<ParabolicSplitting>(P), N, TotalBound::Delta);
  std::vector<LabelId> labels;
  for (const auto& [mu, ids] : M.window_basis({1, 1, 0}).spaces) labels.insert(labels.end(), ids.begin(), ids.end());
  const auto syms = g.basis_window(1);
  CHECK_FALSE(representation_check(M, syms, syms, labels).ok());
}

TEST_CASE("tensor module A2 J={1}") {
  auto s = make(2, {1}, 1);
  std::vector<LabelId> labels;
  for (const auto& [mu, ids] : s.N->window_basis({2, 1, 0}).spaces) labels.insert(labels.end(), ids.begin(), ids.end());
  std::vector<Symbol> levi;
  for (const auto& x : s.g->basis_window(2))
    if (s.N->acts(x)) levi.push_back(x);
  const auto rep = representation_check(*s.N, levi, levi, labels);
  CHECK_MESSAGE(rep.ok(), rep.first_failure);
  // L0 and GJ commute on tensor labels
  for (LabelId v : labels)
    for (int k : {-2, -1, 1, 2})
      for (const auto& x : levi) {
        if (s.P->classify(x) != Tag::L0) continue;
        const auto gx = s.N->act(s.P->gj_element(0, k), s.N->act(x, v));
        const auto xg = s.N->act(x, s.N->act(s.P->gj_element(0, k), ModuleVector{{v, Rational(1)}}));
        CHECK(gx == xg);
      }
}

TEST_CASE("tensor factorization") {
  auto s = make(2, {1}, 1);
  const TruncationWindow w{2, 2, 0};
  const auto rep = tensor_factorize(*s.N, *s.P, w);
  CHECK(rep.full_rank);
  CHECK(rep.V_dims == [&] {
    std::map<Degree, std::size_t> d;
    for (const auto& [mu, ids] : s.V->window_basis(w).spaces) d[mu] = ids.size();
    return d;
  }());
  auto scr = std::make_shared<ScrambledModule>(s.N, w, 11);
  const auto rs = tensor_factorize(*scr, *s.P, w);
  CHECK(rs.full_rank);
  CHECK(rs.slices.size() == rep.slices.size());

  auto z = make(2, {1}, 0);
  CHECK_THROWS_AS(tensor_factorize(*z.N, *z.P, w), std::invalid_argument);
}
