// One line per acceptance criterion: "criterion N: PASS|FAIL ...".
#include "affind/experiment.hpp"
#include "affind/root_system.hpp"
#include "affind/verifier.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace affind;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome& out;
  void operator()(bool ok, const std::string& what) {
    if (!ok && out.pass) out.detail = what;
    out.pass = out.pass && ok;
  }
};

ExperimentSpec config(char which, int D, int H, Rational a = 1) {
  ExperimentSpec s;
  s.window = {D, H, 0};
  s.module.charge = a;
  if (which == 'c') {
    s.type = AffineType::parse("A2^1");
    s.J = {1};
    return s;
  }
  s.type = AffineType::parse("A1^1");
  s.module.kind = "fock";
  if (which == 'b') s.module.phi.set(1, '-').set(2, '+');
  return s;
}

// Positive roots of A_N as sums of consecutive simple roots.
bool a_series_root(const std::vector<Rational>& c) {
  int first = -1, last = -1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (c[i] != 1) return false;
    if (first < 0) first = static_cast<int>(i);
    if (last >= 0 && last != static_cast<int>(i) - 1) return false;
    last = static_cast<int>(i);
  }
  return first >= 0;
}

RootClass untwisted_oracle(const std::vector<Rational>& c, const Rational& d) {
  bool zero = true;
  for (const auto& x : c) zero = zero && x.is_zero();
  if (!is_integer(d)) return RootClass::NotARoot;
  if (zero) return d.is_zero() ? RootClass::NotARoot : RootClass::Imaginary;
  std::vector<Rational> neg;
  for (const auto& x : c) neg.push_back(-x);
  return a_series_root(c) || a_series_root(neg) ? RootClass::Real : RootClass::NotARoot;
}

// A_2^(2): ±α + 2nδ and ±(α + (2n-1)δ)/2, imaginary nδ.
RootClass a22_oracle(const Rational& c, const Rational& d) {
  if (c.is_zero()) return is_integer(d) && !d.is_zero() ? RootClass::Imaginary : RootClass::NotARoot;
  if (c == 1 || c == -1) return is_integer(d) && is_integer(d / 2) ? RootClass::Real : RootClass::NotARoot;
  if (c == Rational(1, 2) || c == Rational(-1, 2)) {
    const Rational twice = 2 * d;
    return is_integer(twice) && !is_integer(d) ? RootClass::Real : RootClass::NotARoot;
  }
  return RootClass::NotARoot;
}

Outcome criterion1() {
  Outcome o;
  Check check{o};
  std::size_t tested = 0, half = 0;
  for (int N : {1, 2}) {
    const AffineType t = AffineType::parse("A" + std::to_string(N) + "^1");
    const AffineRootSystem rs(t);
    const int combos = N == 1 ? 9 : 81;  // finite coefficients in [-2, 2] by halves
    for (int code = 0; code < combos; ++code) {
      int r = code;
      std::vector<Rational> c;
      VectorQ f(N);
      for (int i = 0; i < N; ++i) {
        c.push_back(Rational(r % 9 - 4, 2));
        f(i) = c.back();
        r /= 9;
      }
      for (int d2 = -20; d2 <= 20; ++d2) {
        const Rational d(d2, 2);
        const RootClass got = rs.classify(AffineRoot(f, d));
        ++tested;
        check(got == untwisted_oracle(c, d), t.token() + " " + AffineRoot(f, d).str());
      }
    }
    // the window enumerator lists exactly the oracle's positive real roots
    for (const auto& a : rs.positive_real_window(10)) {
      std::vector<Rational> c(a.finite.data(), a.finite.data() + a.finite.size());
      check(untwisted_oracle(c, a.delta) == RootClass::Real, "window root " + a.str());
    }
  }
  const AffineRootSystem a22(AffineType::parse("A2^2"));
  for (int c4 = -12; c4 <= 12; ++c4)
    for (int d4 = -40; d4 <= 40; ++d4) {
      const Rational c(c4, 4), d(d4, 4);
      VectorQ f(1);
      f(0) = c;
      const RootClass want = a22_oracle(c, d);
      if (want == RootClass::Real && !is_integer(d)) ++half;
      ++tested;
      check(a22.classify(AffineRoot(f, d)) == want, "A2^2 " + AffineRoot(f, d).str());
    }
  o.detail = o.pass ? std::to_string(tested) + " lattice points, " + std::to_string(half) + " half roots accepted" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  Check check{o};
  const LoopAlgebra a1(1), a2(2);
  const auto r1 = lie_axiom_check(a1, 2);
  check(r1.ok(), r1.first_failure);
  const auto r2 = lie_axiom_check(a2, 3, 1000, 2024);
  check(r2.ok(), r2.first_failure);
  check(r2.triples >= 1000, "too few Jacobi samples");
  if (o.pass)
    o.detail = "A1: " + std::to_string(r1.pairs) + " pairs, " + std::to_string(r1.triples) + " triples; A2: " +
               std::to_string(r2.pairs) + " pairs, " + std::to_string(r2.triples) + " sampled triples";
  return o;
}

Outcome criterion3() {
  Outcome o;
  Check check{o};
  const LoopAlgebra g(2);
  const Parabolic p(g, {1});
  const auto rep = decomposition_certificates(p, 3, 5);
  check(rep.ok(), rep.first_failure);
  for (int k = -5; k <= 5; ++k) {
    if (k == 0) continue;
    const auto basis = p.gj_basis(k);
    check(basis.size() == 1, "dim (G_J)_kδ ≠ 1");
    if (basis.size() != 1) continue;
    const Rational a = basis[0].coeff(Symbol::h(0, k)), b = basis[0].coeff(Symbol::h(1, k));
    check(!a.is_zero() && b == 2 * a && basis[0].size() == 2, "gj_basis(" + std::to_string(k) + ") = " + g.str(basis[0]));
  }
  if (o.pass) o.detail = std::to_string(rep.checks) + " bracket and form checks";
  return o;
}

Outcome criterion4() {
  Outcome o;
  Check check{o};
  std::size_t weights = 0;
  for (char which : {'a', 'c'})
    for (int D = 0; D <= 3; ++D)
      for (int H = 0; H <= 2; ++H) {
        Experiment e(config(which, D, H));
        const TruncationWindow w{D, H, 0};
        const Character ch = character(*e.M(), w);
        const WindowBasis& b = e.M()->window_basis(w);
        check(!b.overflow, "overflow");
        for (const auto& [mu, n] : ch) {
          ++weights;
          check(static_cast<long>(weight_space_basis(*e.M(), mu, w).labels.size()) == n,
                std::string(1, which) + " " + w.str() + " at " + mu.weight_str());
        }
        for (const auto& [mu, ids] : b.spaces) check(ch.count(mu) == 1, "enumerated weight missing from character");
        if (which == 'a' && D == 3 && H >= 1)
          check(ch.at(Degree{{-1}, 0}) == 7, "dim at λ-α1 is " + std::to_string(ch.at(Degree{{-1}, 0})));
      }
  if (o.pass) o.detail = std::to_string(weights) + " weight spaces; dim M_{λ-α1} = 7 at D=3";
  return o;
}

Outcome criterion5() {
  Outcome o;
  Check check{o};
  std::ostringstream os;
  for (char which : {'a', 'b', 'c'}) {
    Experiment e(config(which, 3, 2));
    const auto r = theorem2_report(*e.M(), e.parabolic(), {3, 2, 0});
    check(r.verdict == Verdict::Pass, std::string("config ") + which + ": " + r.reason);
    std::size_t below = 0;
    for (const auto& w : r.per_weight) {
      if (w.expected_top_dim == 0) {
        ++below;
        check(w.dim_invariants == 0, std::string("config ") + which + ": invariants at " + w.weight.weight_str());
      } else {
        check(w.dim_invariants == w.expected_top_dim, "top dimension mismatch");
      }
    }
    os << which << ": " << r.per_weight.size() << " weights (" << below << " below the top) ";
  }
  if (o.pass) o.detail = os.str() + "at D=3, H=2";
  return o;
}

Outcome criterion6() {
  Outcome o;
  Check check{o};
  Experiment e(config('a', 3, 2, 0));
  const auto t = theorem2_report(*e.M(), e.parabolic(), {3, 2, 0});
  check(t.verdict != Verdict::Pass, "theorem2 passed the a=0 control");
  const auto r = irreducibility_probe(*e.M(), e.parabolic(), {3, 2, 0});
  check(r.verdict == Irreducibility::ReducibleWithWitness, "probe verdict " + std::string(to_string(r.verdict)));
  check(!r.witness.empty() && !r.certificate.empty(), "missing witness");
  Experiment pos(config('a', 3, 2, 1));
  check(irreducibility_probe(*pos.M(), pos.parabolic(), {3, 2, 0}).verdict == Irreducibility::IrreducibleAtWindow,
        "a=1 is not irreducible at window");
  if (o.pass) o.detail = "theorem2 " + std::string(to_string(t.verdict)) + "; witness " + r.witness;
  return o;
}

Outcome criterion7() {
  Outcome o;
  Check check{o};
  const LoopAlgebra g(1);
  auto W = FockModule::full(g, {1, {}});
  std::size_t rows = 0;
  for (const auto& us : std::vector<std::vector<ModeWord>>{{{{-1, 0}}}, {{{-1, 0}}, {{-3, 0}}}}) {
    const auto r = lemma_heis_check(*W, W->top(), us, 2, 8);
    for (const auto& row : r.rows) {
      ++rows;
      check(row.holds(), "z_N = z_-N = 0 at N = " + std::to_string(row.N));
    }
  }
  if (o.pass) o.detail = std::to_string(rows) + " rows";
  return o;
}

Outcome criterion8() {
  Outcome o;
  Check check{o};
  std::size_t slices = 0;
  for (int D = 0; D <= 2; ++D) {
    Experiment e(config('c', D, 2));
    const TruncationWindow w{D, 2, 0};
    auto scr = std::make_shared<ScrambledModule>(e.N(), w, 17 + static_cast<std::uint64_t>(D));
    const auto r = tensor_factorize(*scr, e.parabolic(), w);
    check(r.full_rank, "not full rank at D=" + std::to_string(D));
    check(r.slices.size() == e.N()->window_basis(w).spaces.size(), "missing weight spaces");
    for (const auto& s : r.slices) check(s.injective && s.surjective && s.rank == s.dim, "slice " + s.weight.weight_str());
    slices += r.slices.size();
  }
  if (o.pass) o.detail = std::to_string(slices) + " weight spaces certified";
  return o;
}

Outcome criterion9() {
  Outcome o;
  Check check{o};
  std::size_t checks = 0;
  for (char which : {'a', 'b', 'c'}) {
    Experiment e(config(which, 3, 2));
    const TruncationWindow w{3, 2, 0};
    const auto f = freeness_check(*e.M(), w, 9);
    check(f.free, std::string("config ") + which + " not free");
    std::vector<LabelId> labels;
    for (const auto& [mu, ids] : e.M()->window_basis(w).spaces) labels.insert(labels.end(), ids.begin(), ids.end());
    const auto syms = e.algebra().basis_window(which == 'c' ? 1 : 2);
    const auto r = representation_check(*e.M(), syms, syms, labels);
    check(r.ok(), std::string("config ") + which + ": " + r.first_failure);
    checks += r.checks;
  }
  if (o.pass) o.detail = std::to_string(checks) + " commutator identities";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::function<Outcome()>, double>> criteria{
      {criterion1, 5},  {criterion2, 60}, {criterion3, 30}, {criterion4, 120}, {criterion5, 600},
      {criterion6, 60}, {criterion7, 10}, {criterion8, 60}, {criterion9, 300}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].first();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > criteria[i].second) {
      o.pass = false;
      o.detail += " (over the time limit)";
    }
    std::printf("criterion %zu: %s (%.2fs, limit %.0fs) %s\n", i + 1, o.pass ? "PASS" : "FAIL", secs, criteria[i].second,
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
