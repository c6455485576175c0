#pragma once

#include "affind/loop_algebra.hpp"
#include "affind/root_system.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace affind {

/// Borel subalgebra data: a φ-table plus optional per-(k, j) overrides that
/// split the imaginary spaces basis element by basis element.
struct BorelSpec {
  PhiTable phi;
  /// (k > 0, Cartan index j 1-based) → sign of x_{kj}'s side.
  std::optional<std::map<std::pair<int, int>, char>> split;

  char sign(int k, int j) const;
};

bool borel_membership(const Symbol& s, const BorelSpec& spec);

/// Place of a basis symbol in G = n_J̄ ⊕ l_J ⊕ n_J.
///
/// H(i,m) with m ≠ 0 lies in l_J but in general straddles G(l_J) and G_J;
/// such symbols are tagged MixedImaginary and resolved by Parabolic::split.
enum class Tag { NJ, NJbar, L0, GJ, Center, CartanOnly, MixedImaginary };
std::string_view to_string(Tag t);

/// Coordinates of H(p,m) in the adapted basis {H(j,m) : j ∈ J} ∪ gj_basis(m).
struct ImaginarySplit {
  std::vector<Rational> levi;  ///< on H(j,m), j ∈ J in increasing order
  std::vector<Rational> gj;    ///< on the gj basis vectors
};

/// Type II parabolic P_J ⊇ B_nat for untwisted type A.
class Parabolic {
 public:
  /// Throws std::invalid_argument unless J is a proper subset of {1..N}.
  Parabolic(const LoopAlgebra& algebra, NodeSet J);

  const LoopAlgebra& algebra() const { return *algebra_; }
  const NodeSet& J() const { return J_; }
  const std::vector<int>& J_indices() const { return j_index_; }  ///< 0-based
  const std::vector<NodeSet>& components() const { return components_; }

  Tag classify(const Symbol& s) const;
  /// α = ε_row - ε_col lies in Δ̇^J.
  bool levi_root(int row, int col) const;
  /// Σ_{j∉J} |coefficient| of the finite degree.
  int jbar_height(const Symbol& s) const;
  /// Σ_{j∈J} |coefficient| of the finite degree.
  int j_depth(const Symbol& s) const;

  /// Rows span (G_J)_{kδ} in H(·,k)-coordinates; primitive integer vectors,
  /// independent of k.
  const MatrixQ& gj_rows() const { return gj_rows_; }
  int gj_dim() const { return static_cast<int>(gj_rows_.rows()); }
  std::vector<LieElement> gj_basis(int k) const;
  LieElement gj_element(int t, int k) const;

  const ImaginarySplit& split(int p) const { return splits_[static_cast<std::size_t>(p)]; }

 private:
  const LoopAlgebra* algebra_;
  NodeSet J_;
  std::vector<int> j_index_;
  std::vector<bool> in_j_;
  std::vector<NodeSet> components_;
  MatrixQ gj_rows_;
  std::vector<ImaginarySplit> splits_;
};

struct DecompositionReport {
  std::size_t checks = 0;
  bool nj_closed = true;
  bool njbar_closed = true;
  bool levi_closed = true;      ///< l_J⁰ + H
  bool gj_commutes = true;      ///< [G_J, l_J⁰] = 0
  bool orthogonal = true;       ///< (G_J)_{kδ} ⟂ H(j,-k), j ∈ J
  bool dims = true;             ///< dim (G_J)_{kδ} + |J| = N
  std::string first_failure;
  bool ok() const { return nj_closed && njbar_closed && levi_closed && gj_commutes && orthogonal && dims; }
};

/// Bracket-closure of n_J, n_J̄ and l_J⁰ + H on symbols with |m| <= bound,
/// [G_J, l_J⁰] = 0 for G_J degrees |k| <= bound, orthogonality and dimension
/// counts for 1 <= k <= kmax.
DecompositionReport decomposition_certificates(const Parabolic& p, int bound, int kmax);

}  // namespace affind
