#include "affind/loop_algebra.hpp"

#include "affind/linalg.hpp"

#include <random>
#include <regex>
#include <sstream>

namespace affind {

Degree& Degree::operator+=(const Degree& o) {
  for (std::size_t i = 0; i < finite.size(); ++i) finite[i] += o.finite[i];
  delta += o.delta;
  return *this;
}

Degree& Degree::operator-=(const Degree& o) {
  for (std::size_t i = 0; i < finite.size(); ++i) finite[i] -= o.finite[i];
  delta -= o.delta;
  return *this;
}

Degree Degree::operator-() const {
  Degree d = *this;
  for (auto& x : d.finite) x = -x;
  d.delta = -d.delta;
  return d;
}

bool Degree::finite_zero() const {
  for (int x : finite)
    if (x != 0) return false;
  return true;
}

AffineRoot Degree::root() const {
  VectorQ f(static_cast<Eigen::Index>(finite.size()));
  for (std::size_t i = 0; i < finite.size(); ++i) f(static_cast<Eigen::Index>(i)) = finite[i];
  return {f, Rational(delta)};
}

std::string Degree::weight_str(std::string_view base) const {
  std::ostringstream os;
  os << base;
  for (std::size_t i = 0; i < finite.size(); ++i)
    if (finite[i] != 0) os << (finite[i] > 0 ? "+" : "-") << std::abs(finite[i]) << "·α" << i + 1;
  if (delta != 0) os << (delta > 0 ? "+" : "-") << std::abs(delta) << "·δ";
  return os.str();
}

void LieElement::add(const Symbol& s, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  for (const auto& [s, c] : o.terms_) add(s, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, x] : terms_) x *= c;
  return *this;
}

LieElement LieElement::operator-() const {
  LieElement r = *this;
  r *= Rational(-1);
  return r;
}

Rational LieElement::coeff(const Symbol& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

LoopAlgebra::LoopAlgebra(const AffineType& type, BracketFault fault)
    : type_(type), rank_(type.rank), fault_(fault) {
  if (type.series != 'A' || type.twist != 1)
    throw NotSupported("the bracket engine realizes untwisted type A only, got " + type.token());
  finite_ = finite_root_datum('A', rank_);
}

LoopAlgebra::LoopAlgebra(int rank, BracketFault fault) : LoopAlgebra(AffineType{'A', rank, 1}, fault) {}

std::vector<int> LoopAlgebra::root_of(int row, int col) const {
  std::vector<int> r(static_cast<std::size_t>(rank_), 0);
  const int sign = row < col ? 1 : -1;
  for (int p = std::min(row, col); p < std::max(row, col); ++p) r[static_cast<std::size_t>(p)] = sign;
  return r;
}

std::pair<int, int> LoopAlgebra::matrix_unit(const std::vector<int>& root) const {
  if (static_cast<int>(root.size()) != rank_) throw std::invalid_argument("root has wrong rank");
  int lo = -1, hi = -1, sign = 0;
  for (int p = 0; p < rank_; ++p) {
    const int c = root[static_cast<std::size_t>(p)];
    if (c == 0) continue;
    if ((c != 1 && c != -1) || (sign != 0 && c != sign) || (hi >= 0 && hi != p))
      throw std::invalid_argument("not a root of A_N");
    sign = c;
    if (lo < 0) lo = p;
    hi = p + 1;
  }
  if (sign == 0) throw std::invalid_argument("zero is not a root");
  return sign > 0 ? std::pair{lo, hi} : std::pair{hi, lo};
}

int LoopAlgebra::root_on_coroot(int row, int col, int p) const {
  auto d = [](int a, int b) { return a == b ? 1 : 0; };
  return d(row, p) - d(row, p + 1) - d(col, p) + d(col, p + 1);
}

Degree LoopAlgebra::degree(const Symbol& s) const {
  Degree d = Degree::zero(rank_);
  if (s.kind == Symbol::E) d.finite = root_of(s.i, s.j);
  if (s.is_loop()) d.delta = s.m;
  return d;
}

bool LoopAlgebra::valid(const Symbol& s) const {
  switch (s.kind) {
    case Symbol::E:
      return s.i != s.j && s.i >= 0 && s.j >= 0 && s.i <= rank_ && s.j <= rank_;
    case Symbol::H:
      return s.i >= 0 && s.i < rank_;
    default:
      return true;
  }
}

void LoopAlgebra::add_diagonal(LieElement& out, int i, int j, int m, const Rational& c) const {
  if (i < j) {
    for (int p = i; p < j; ++p) out.add(Symbol::h(p, m), c);
  } else {
    for (int p = j; p < i; ++p) out.add(Symbol::h(p, m), -c);
  }
}

LieElement LoopAlgebra::bracket(const Symbol& x, const Symbol& y) const {
  LieElement out;
  if (x.kind == Symbol::C || y.kind == Symbol::C) return out;
  if (x.kind == Symbol::D) {
    if (y.is_loop() && y.m != 0) out.add(y, Rational(y.m));
    return out;
  }
  if (y.kind == Symbol::D) {
    if (x.is_loop() && x.m != 0) out.add(x, Rational(-x.m));
    return out;
  }
  const int m = x.m, n = y.m;
  const bool central = (m + n == 0) && fault_ != BracketFault::DropCentralTerm;
  if (x.kind == Symbol::E && y.kind == Symbol::E) {
    // [E_ij, E_kl] = δ_jk E_il - δ_li E_kj, plus m δ_{m+n,0} tr(E_ij E_kl) c
    const int i = x.i, j = x.j, k = y.i, l = y.j;
    if (j == k && i == l) {
      add_diagonal(out, i, j, m + n, Rational(1));
      if (central && m != 0) out.add(Symbol::c(), Rational(m));
    } else if (j == k) {
      out.add(Symbol::e(i, l, m + n), Rational(1));
    } else if (l == i) {
      out.add(Symbol::e(k, j, m + n), Rational(-1));
    }
    return out;
  }
  if (x.kind == Symbol::E && y.kind == Symbol::H) {
    const int a = root_on_coroot(x.i, x.j, y.i);
    if (a != 0) out.add(Symbol::e(x.i, x.j, m + n), Rational(-a));
    return out;
  }
  if (x.kind == Symbol::H && y.kind == Symbol::E) {
    const int a = root_on_coroot(y.i, y.j, x.i);
    if (a != 0) out.add(Symbol::e(y.i, y.j, m + n), Rational(a));
    return out;
  }
  // H, H
  if (central && m != 0) {
    const int t = trace_cartan(x.i, y.i);
    if (t != 0) out.add(Symbol::c(), Rational(m * t));
  }
  return out;
}

LieElement LoopAlgebra::bracket(const LieElement& x, const LieElement& y) const {
  LieElement out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      LieElement t = bracket(a, b);
      if (!t.is_zero()) out += (ca * cb) * t;
    }
  return out;
}

Rational LoopAlgebra::invariant_form(const Symbol& x, const Symbol& y) const {
  if ((x.kind == Symbol::C && y.kind == Symbol::D) || (x.kind == Symbol::D && y.kind == Symbol::C)) return 1;
  if (!x.is_loop() || !y.is_loop() || x.m + y.m != 0) return 0;
  if (x.kind == Symbol::E && y.kind == Symbol::E) return (x.j == y.i && x.i == y.j) ? 1 : 0;
  if (x.kind == Symbol::H && y.kind == Symbol::H) return trace_cartan(x.i, y.i);
  return 0;
}

Rational LoopAlgebra::invariant_form(const LieElement& x, const LieElement& y) const {
  Rational s = 0;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      const Rational f = invariant_form(a, b);
      if (!f.is_zero()) s += ca * cb * f;
    }
  return s;
}

HeisenbergBasis LoopAlgebra::heisenberg_basis(int k) const {
  if (k == 0) throw std::invalid_argument("heisenberg_basis: k must be nonzero");
  HeisenbergBasis hb;
  hb.k = k;
  hb.pairing = MatrixQ(rank_, rank_);
  for (int i = 0; i < rank_; ++i) {
    hb.basis.push_back(Symbol::h(i, k));
    for (int j = 0; j < rank_; ++j)
      hb.pairing(i, j) = bracket(Symbol::h(i, k), Symbol::h(j, -k)).coeff(Symbol::c());
  }
  // [H(i,k), Σ_l B_jl H(l,-k)] = (P Bᵀ)_ij, so B = P⁻¹ (P symmetric).
  hb.dual = inverse(hb.pairing).transpose();
  return hb;
}

Symbol LoopAlgebra::flip(const Symbol& s) const {
  switch (s.kind) {
    case Symbol::E:
      return Symbol::e(s.j, s.i, -s.m);
    case Symbol::H:
      return Symbol::h(s.i, -s.m);
    default:
      return s;
  }
}

std::vector<Symbol> LoopAlgebra::basis_window(int bound) const {
  std::vector<Symbol> out;
  for (int m = -bound; m <= bound; ++m) {
    for (int i = 0; i <= rank_; ++i)
      for (int j = 0; j <= rank_; ++j)
        if (i != j) out.push_back(Symbol::e(i, j, m));
    for (int p = 0; p < rank_; ++p) out.push_back(Symbol::h(p, m));
  }
  out.push_back(Symbol::c());
  out.push_back(Symbol::d());
  std::sort(out.begin(), out.end());
  return out;
}

std::string LoopAlgebra::str(const Symbol& s) const {
  switch (s.kind) {
    case Symbol::E: {
      std::string r = "E[";
      for (int p = 0; p <= rank_; ++p) {
        if (p) r += ",";
        r += std::to_string((p == s.i ? 1 : 0) - (p == s.j ? 1 : 0));
      }
      return r + ";m=" + std::to_string(s.m) + "]";
    }
    case Symbol::H:
      return "H[" + std::to_string(s.i + 1) + ";m=" + std::to_string(s.m) + "]";
    case Symbol::C:
      return "C";
    case Symbol::D:
      return "D";
  }
  return "?";
}

std::string LoopAlgebra::str(const LieElement& x) const {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [s, c] : x) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += c.str() + "·";
    out += str(s);
  }
  return out;
}

Symbol LoopAlgebra::parse_symbol(std::string_view text) const {
  static const std::regex e_re(R"(^E\[([-0-9, ]+);\s*m\s*=\s*(-?[0-9]+)\]$)");
  static const std::regex h_re(R"(^H\[\s*([0-9]+)\s*;\s*(?:m\s*=\s*)?(-?[0-9]+)\]$)");
  const std::string s(text);
  std::smatch mt;
  if (s == "C") return Symbol::c();
  if (s == "D") return Symbol::d();
  if (std::regex_match(s, mt, h_re)) {
    const Symbol h = Symbol::h(std::stoi(mt[1]) - 1, std::stoi(mt[2]));
    if (!valid(h)) throw std::invalid_argument("Cartan index out of range in '" + s + "'");
    return h;
  }
  if (std::regex_match(s, mt, e_re)) {
    std::vector<int> eps;
    std::stringstream ss(mt[1].str());
    std::string item;
    while (std::getline(ss, item, ',')) eps.push_back(std::stoi(item));
    if (static_cast<int>(eps.size()) != rank_ + 1) throw std::invalid_argument("wrong number of ε-coordinates in '" + s + "'");
    int row = -1, col = -1;
    for (int p = 0; p <= rank_; ++p) {
      const int v = eps[static_cast<std::size_t>(p)];
      if (v == 1 && row < 0) row = p;
      else if (v == -1 && col < 0) col = p;
      else if (v != 0) throw std::invalid_argument("'" + s + "' is not a root vector");
    }
    if (row < 0 || col < 0) throw std::invalid_argument("'" + s + "' is not a root vector");
    return Symbol::e(row, col, std::stoi(mt[2]));
  }
  throw std::invalid_argument("cannot parse basis symbol '" + s + "'");
}

LieAxiomReport lie_axiom_check(const LoopAlgebra& g, int bound, std::size_t samples, std::uint64_t seed) {
  LieAxiomReport rep;
  const auto basis = g.basis_window(bound);
  const auto fail = [&](std::size_t& counter, const std::string& what) {
    if (counter++ == 0 && rep.first_failure.empty()) rep.first_failure = what;
  };
  for (const auto& x : basis)
    for (const auto& y : basis) {
      ++rep.pairs;
      const LieElement xy = g.bracket(x, y);
      if (!(xy + g.bracket(y, x)).is_zero()) fail(rep.antisymmetry_failures, "[x,y] + [y,x] ≠ 0 for " + g.str(x) + ", " + g.str(y));
      const Degree d = g.degree(x) + g.degree(y);
      for (const auto& [s, c] : xy)
        if (s.kind != Symbol::C && g.degree(s) != d) fail(rep.grading_failures, "degree of " + g.str(s) + " in [" + g.str(x) + "," + g.str(y) + "]");
    }
  const auto jacobi = [&](const Symbol& x, const Symbol& y, const Symbol& z) {
    ++rep.triples;
    const LieElement X(x), Y(y), Z(z);
    const LieElement sum = g.bracket(g.bracket(X, Y), Z) + g.bracket(g.bracket(Y, Z), X) + g.bracket(g.bracket(Z, X), Y);
    if (!sum.is_zero()) fail(rep.jacobi_failures, "Jacobi fails on " + g.str(x) + ", " + g.str(y) + ", " + g.str(z) + ": " + g.str(sum));
  };
  if (samples == 0) {
    for (const auto& x : basis)
      for (const auto& y : basis)
        for (const auto& z : basis) jacobi(x, y, z);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (std::size_t i = 0; i < samples; ++i) jacobi(basis[pick(rng)], basis[pick(rng)], basis[pick(rng)]);
  }
  return rep;
}

}  // namespace affind
