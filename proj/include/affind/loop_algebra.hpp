#pragma once

#include "affind/rational.hpp"
#include "affind/root_system.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace affind {

class NotSupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integral degree in the affine root lattice: Σ finite[i] α_{i+1} + delta δ.
struct Degree {
  std::vector<int> finite;
  int delta = 0;

  static Degree zero(int rank) { return {std::vector<int>(static_cast<std::size_t>(rank), 0), 0}; }
  Degree& operator+=(const Degree& o);
  Degree& operator-=(const Degree& o);
  friend Degree operator+(Degree a, const Degree& b) { return a += b; }
  friend Degree operator-(Degree a, const Degree& b) { return a -= b; }
  Degree operator-() const;
  auto operator<=>(const Degree&) const = default;

  bool finite_zero() const;
  AffineRoot root() const;
  /// "λ-1·α1+2·δ" style offset from a highest weight named `base`.
  std::string weight_str(std::string_view base = "λ") const;
};

/// Basis symbol of sl_{N+1} ⊗ C[t,t^-1] ⊕ Cc ⊕ Cd.
///
/// E(i,j;m) is the matrix unit E_ij ⊗ t^m (0-based, i ≠ j), H(p;m) is
/// (E_pp - E_{p+1,p+1}) ⊗ t^m (0-based p), C is the centre and D the
/// scaling element.
struct Symbol {
  enum Kind : std::uint8_t { E = 0, H = 1, C = 2, D = 3 };
  Kind kind = C;
  std::int8_t i = 0;
  std::int8_t j = 0;
  std::int32_t m = 0;

  static Symbol e(int row, int col, int m) { return {E, static_cast<std::int8_t>(row), static_cast<std::int8_t>(col), m}; }
  static Symbol h(int p, int m) { return {H, static_cast<std::int8_t>(p), 0, m}; }
  static Symbol c() { return {C, 0, 0, 0}; }
  static Symbol d() { return {D, 0, 0, 0}; }

  bool is_loop() const { return kind == E || kind == H; }
  bool is_cartan() const { return kind == C || kind == D || (kind == H && m == 0); }

  auto operator<=>(const Symbol&) const = default;
};

/// Sparse rational combination of basis symbols; zero coefficients are never stored.
class LieElement {
 public:
  using Terms = std::map<Symbol, Rational>;

  LieElement() = default;
  LieElement(const Symbol& s, Rational c = 1) { add(s, std::move(c)); }

  void add(const Symbol& s, const Rational& c);
  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rational& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }
  LieElement operator-() const;
  bool operator==(const LieElement&) const = default;

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  Rational coeff(const Symbol& s) const;
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  std::size_t size() const { return terms_.size(); }

 private:
  Terms terms_;
};

/// Mutation switches for the verification harness. Production code uses None.
enum class BracketFault { None, DropCentralTerm };

/// Dual bases of G_{kδ} and G_{-kδ}.
struct HeisenbergBasis {
  int k = 0;
  std::vector<Symbol> basis;  ///< H(1,k) .. H(N,k)
  MatrixQ pairing;            ///< pairing(i,j) = coefficient of c in [H(i,k), H(j,-k)]
  /// Row j expresses x_{-k,j} in H(·,-k) so that [H(i,k), x_{-k,j}] = δ_ij c.
  MatrixQ dual;
};

/// Untwisted affine algebra of type A_N with exact structure constants.
class LoopAlgebra {
 public:
  /// Throws NotSupported unless the type is A_N^(1).
  explicit LoopAlgebra(const AffineType& type, BracketFault fault = BracketFault::None);
  explicit LoopAlgebra(int rank, BracketFault fault = BracketFault::None);

  int rank() const { return rank_; }
  const AffineType& type() const { return type_; }
  const FiniteRootDatum& finite() const { return finite_; }
  BracketFault fault() const { return fault_; }

  /// Trace form on sl_{N+1}: (H_p|H_q) is the Cartan matrix.
  int trace_cartan(int p, int q) const { return finite_.cartan(p, q); }

  Degree degree(const Symbol& s) const;
  /// Finite root of E(i,j;m) as simple-root coefficients.
  std::vector<int> root_of(int row, int col) const;
  /// Inverse of root_of; throws if the vector is not a root of A_N.
  std::pair<int, int> matrix_unit(const std::vector<int>& root) const;
  /// α(H_p) for α = ε_row - ε_col.
  int root_on_coroot(int row, int col, int p) const;

  LieElement bracket(const Symbol& x, const Symbol& y) const;
  LieElement bracket(const LieElement& x, const LieElement& y) const;
  Rational invariant_form(const Symbol& x, const Symbol& y) const;
  Rational invariant_form(const LieElement& x, const LieElement& y) const;

  HeisenbergBasis heisenberg_basis(int k) const;

  /// σ: E(α,m) ↦ E(-α,-m), H(i,m) ↦ H(i,-m); fixes C and D.
  Symbol flip(const Symbol& s) const;

  /// Every loop symbol with |m| <= bound plus C and D, in symbol order.
  std::vector<Symbol> basis_window(int bound) const;

  /// "E[1,-1;m=2]" (ε-coordinates of the root), "H[1;m=-3]", "C", "D".
  std::string str(const Symbol& s) const;
  std::string str(const LieElement& x) const;
  Symbol parse_symbol(std::string_view text) const;

  bool valid(const Symbol& s) const;

 private:
  /// E_ii - E_jj in the H basis.
  void add_diagonal(LieElement& out, int i, int j, int m, const Rational& c) const;

  AffineType type_;
  int rank_;
  FiniteRootDatum finite_;
  BracketFault fault_;
};

struct LieAxiomReport {
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t antisymmetry_failures = 0;
  std::size_t jacobi_failures = 0;
  std::size_t grading_failures = 0;
  std::string first_failure;
  bool ok() const { return antisymmetry_failures + jacobi_failures + grading_failures == 0; }
};

/// Antisymmetry and grading on every pair of basis_window(bound); Jacobi on
/// every triple when samples == 0, else on `samples` seeded random triples.
LieAxiomReport lie_axiom_check(const LoopAlgebra& g, int bound, std::size_t samples = 0, std::uint64_t seed = 1);

}  // namespace affind
