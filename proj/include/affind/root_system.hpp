#pragma once

#include "affind/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace affind {

/// Subset of the finite Dynkin nodes, 1-based as in the usual labelling.
using NodeSet = std::set<int>;

/// Finite root system built from a Cartan matrix (Kac convention a_ij = <α_i^∨, α_j>).
struct FiniteRootDatum {
  char series = 'A';
  int rank = 0;
  Eigen::MatrixXi cartan;
  /// Symmetrized form (α_i|α_j), normalized so the shortest simple root has length 2.
  MatrixQ form;
  /// Positive roots as coefficient vectors on the simple roots, sorted by
  /// height and then lexicographically.
  std::vector<Eigen::VectorXi> positive_roots;
  /// Parallel to positive_roots. Simply-laced systems mark every root long.
  std::vector<bool> is_long;

  bool simply_laced() const;
  Rational length(const Eigen::VectorXi& root) const;
  /// Index into positive_roots of ±root, or -1.
  int find(const Eigen::VectorXi& root) const;
  bool is_root(const Eigen::VectorXi& v) const { return find(v) >= 0; }
  bool adjacent(int i, int j) const { return i != j && cartan(i - 1, j - 1) != 0; }
};

/// Builds the datum for a finite type (A_n, B_n, C_n, D_n, E_6..8, F_4, G_2) by
/// closure of the simple roots under simple-root strings. C_1 is accepted and
/// coincides with A_1.
FiniteRootDatum finite_root_datum(char series, int rank);

/// Affine Dynkin label X_N^(r).
struct AffineType {
  char series = 'A';
  int rank = 1;
  int twist = 1;

  /// Parses tokens like "A1^1", "A2^2", "D4^3". Throws std::invalid_argument.
  static AffineType parse(std::string_view token);
  std::string token() const;

  bool untwisted() const { return twist == 1; }
  /// The A_{2l}^(2) family, the only one with half-integral real roots.
  bool odd_twisted_a() const { return series == 'A' && twist == 2 && rank % 2 == 0; }

  /// Type of the finite root system Δ̇ whose roots label the real roots.
  std::pair<char, int> finite_type() const;
  int finite_rank() const { return finite_type().second; }

  auto operator<=>(const AffineType&) const = default;
};

/// Element of the affine root lattice (tensored with Q): Σ c_i α_i + d δ.
struct AffineRoot {
  VectorQ finite;
  Rational delta;

  AffineRoot() = default;
  AffineRoot(VectorQ f, Rational d) : finite(std::move(f)), delta(std::move(d)) {}
  static AffineRoot from_ints(const std::vector<long>& coeffs, long delta);
  static AffineRoot zero(int rank) { return {VectorQ::Zero(rank), Rational(0)}; }

  bool is_zero() const;
  AffineRoot operator-() const { return {-finite, -delta}; }
  AffineRoot operator+(const AffineRoot& o) const { return {finite + o.finite, delta + o.delta}; }
  AffineRoot operator-(const AffineRoot& o) const { return {finite - o.finite, delta - o.delta}; }
  AffineRoot operator*(const Rational& s) const { return {finite * s, delta * s}; }
  bool operator==(const AffineRoot& o) const { return delta == o.delta && finite == o.finite; }
  /// Lexicographic on (delta, finite part).
  bool operator<(const AffineRoot& o) const;

  /// "α1+α2-3δ", "1/2α1+1/2δ", "0"
  std::string str() const;
};

enum class RootClass { Real, Imaginary, NotARoot };
std::string_view to_string(RootClass c);

/// The affine root system of a given type.
class AffineRootSystem {
 public:
  explicit AffineRootSystem(AffineType type);

  const AffineType& type() const { return type_; }
  const FiniteRootDatum& finite() const { return finite_; }
  int rank() const { return finite_.rank; }

  RootClass classify(const AffineRoot& root) const;

  /// Elements of the positive real set S with |δ-coefficient| <= bound,
  /// sorted by (δ-coefficient, finite part).
  std::vector<AffineRoot> positive_real_window(int delta_bound) const;

  /// Every root (real and imaginary, both signs) with |δ-coefficient| <= bound.
  std::vector<AffineRoot> roots_window(int delta_bound) const;

 private:
  /// Real roots of S with finite part ±f (f a positive root of Δ̇, as an
  /// integer vector) are α + nδ with n in a coset; returns the step r so that
  /// n ∈ rZ, or 0 when the pattern does not apply.
  int delta_step(bool long_root) const;

  AffineType type_;
  FiniteRootDatum finite_;
};

/// Convenience wrappers used by the CLI and tests.
RootClass classify_root(const AffineType& type, const AffineRoot& root);
std::vector<AffineRoot> positive_real_window(const AffineType& type, int delta_bound);

/// J-height: writing the degree as -Σ_{j∉J} k_j α_j + (Q^J + Zδ part), returns
/// Σ k_j when every k_j is a nonnegative integer, std::nullopt otherwise.
std::optional<int> j_height(const AffineRoot& degree, const NodeSet& J);

/// Sign table ℕ → {+,-} with a default beyond the explicit entries.
class PhiTable {
 public:
  PhiTable() = default;
  explicit PhiTable(char default_sign) : default_(check(default_sign)) {}
  PhiTable& set(int n, char sign);
  char sign(int n) const;
  char default_sign() const { return default_; }
  const std::map<int, char>& entries() const { return table_; }
  bool constant_plus() const;
  /// "+" or "1:-,2:+;default:+"
  std::string str() const;
  bool operator==(const PhiTable&) const = default;

 private:
  static char check(char s);
  std::map<int, char> table_;
  char default_ = '+';
};

/// Membership in P_nat = {α+kδ | α ∈ Δ̇_+} ∪ {nδ | n > 0}. Throws on non-roots.
bool in_P_nat(const AffineRootSystem& rs, const AffineRoot& root);
/// Membership in the φ-twisted quasi-partition P^φ. Throws on non-roots.
bool in_P_phi(const AffineRootSystem& rs, const AffineRoot& root, const PhiTable& phi);
/// Membership in the affinization Δ^J. Throws on non-roots.
bool in_Delta_J(const AffineRootSystem& rs, const AffineRoot& root, const NodeSet& J);

/// Partition of J into connected components of the Dynkin diagram, ordered by
/// minimum element.
std::vector<NodeSet> connected_components(const FiniteRootDatum& datum, const NodeSet& J);

std::string to_string(const NodeSet& J);

}  // namespace affind
