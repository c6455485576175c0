#pragma once

#include "affind/module.hpp"
#include "affind/subalgebra.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace affind {

/// Triangular splitting g = lower ⊕ levi ⊕ upper used for induction.
enum class Role { Lower, Levi, Upper, Outside };

class Splitting {
 public:
  virtual ~Splitting() = default;
  virtual Role role(const Symbol& s) const = 0;
  /// Height measure of a lower symbol.
  virtual int height(const Symbol& s) const = 0;
  /// Lower symbols with |m| <= D, in symbol order.
  virtual std::vector<Symbol> lower_window(int D) const = 0;
  virtual std::string name() const = 0;
};

/// G = n_J̄ ⊕ l_J ⊕ n_J for a type II parabolic; height is the J̄-height.
class ParabolicSplitting : public Splitting {
 public:
  explicit ParabolicSplitting(const Parabolic& p) : p_(&p) {}
  Role role(const Symbol& s) const override;
  int height(const Symbol& s) const override { return p_->jbar_height(s); }
  std::vector<Symbol> lower_window(int D) const override;
  std::string name() const override { return "P_" + to_string(p_->J()); }
  const Parabolic& parabolic() const { return *p_; }

 private:
  const Parabolic* p_;
};

/// l_J⁰ = Σ_t l_J(S_t) + H split along its natural Borel: lower symbols are
/// E(-α,m) with α ∈ Δ̇^J_+ and H(j,m) with j ∈ J, m < 0. Height is the J-depth.
class LeviVermaSplitting : public Splitting {
 public:
  explicit LeviVermaSplitting(const Parabolic& p) : p_(&p) {}
  Role role(const Symbol& s) const override;
  int height(const Symbol& s) const override { return p_->j_depth(s); }
  std::vector<Symbol> lower_window(int D) const override;
  std::string name() const override { return "l_J0"; }

 private:
  const Parabolic* p_;
};

/// PBW order on lower symbols: loop degree, then finite root (simple-root
/// coefficients, lexicographic), then kind. Monomials list factors in
/// nonincreasing order.
bool pbw_less(const Symbol& a, const Symbol& b);

using Monomial = std::vector<Symbol>;

/// Which bound caps the total of a label.
enum class TotalBound {
  Size,   ///< Σ|m| over all factors, including the inner label, <= D
  Delta,  ///< |δ-offset of the weight| <= D
};

/// Canonical monomials over s.lower_window(D) with height <= H (and size <= D
/// when size-bounded), in deterministic order.
std::vector<Monomial> enumerate_monomials(const Splitting& s, const TruncationWindow& w, bool size_bounded);

/// Mutation switches for the verification harness. Production code uses None.
enum class StraighteningFault { None, DropReorderedTerm };

/// U(g) ⊗_{U(levi ⊕ upper)} inner, upper acting by zero on the inner module.
///
/// Labels are (canonical monomial, inner label). The action moves a symbol
/// left to right through the monomial, re-straightening every bracket term.
class InducedModule : public WeightModule {
 public:
  struct Key {
    Monomial mono;
    LabelId inner;
    auto operator<=>(const Key&) const = default;
  };

  InducedModule(const LoopAlgebra& algebra, std::shared_ptr<const Splitting> splitting, ModulePtr inner,
                TotalBound bound, StraighteningFault fault = StraighteningFault::None);

  const Splitting& splitting() const { return *splitting_; }
  const WeightModule& inner() const { return *inner_; }
  ModulePtr inner_ptr() const { return inner_; }

  LabelId intern(Monomial mono, LabelId inner) const;
  const Key& key(LabelId v) const { return labels_.key(v); }
  /// 1 ⊗ w
  ModuleVector lift(LabelId inner_label) const;
  ModuleVector lift(const ModuleVector& inner_vector) const;
  /// Component of v in the top 1 ⊗ inner, as an inner vector.
  ModuleVector top_component(const ModuleVector& v) const;
  Degree monomial_degree(const Monomial& mono) const;

  LabelId top() const override;
  Rational charge() const override { return inner_->charge(); }
  bool acts(const Symbol& x) const override { return splitting_->role(x) != Role::Outside; }
  ModuleVector act(const Symbol& x, LabelId v) const override;
  using WeightModule::act;
  Degree weight(LabelId v) const override;
  int size(LabelId v) const override;
  int height(LabelId v) const override;
  bool admits(LabelId v, const TruncationWindow& w) const override;
  std::string label(LabelId v) const override;
  std::string name() const override;
  bool label_less(LabelId a, LabelId b) const override;

 protected:
  WindowBasis build_window_basis(const TruncationWindow& w) const override;
  WindowCounts build_window_counts(const TruncationWindow& w) const override;

 private:
  ModuleVector lower_times(const Symbol& f, LabelId v) const;
  ModuleVector cartan_action(const Symbol& x, LabelId v) const;

  std::shared_ptr<const Splitting> splitting_;
  ModulePtr inner_;
  TotalBound bound_;
  StraighteningFault fault_;
  Interner<Key> labels_;
  ActionCache cache_;
};

/// Ordered basis of a window weight space.
struct WeightSpaceBasis {
  std::vector<LabelId> labels;
  bool overflow = false;
};
WeightSpaceBasis weight_space_basis(const WeightModule& m, const Degree& mu, const TruncationWindow& w);

/// Character by the generating-function route.
Character character(const WeightModule& m, const TruncationWindow& w);

struct FreenessReport {
  bool free = true;
  std::size_t spaces = 0;
  std::size_t vectors = 0;
  std::vector<std::pair<Degree, std::pair<std::size_t, std::size_t>>> deficient;  ///< weight, (rank, dim)
};

/// Builds every window label f_1…f_r ⊗ w by acting on 1 ⊗ w with the factors in
/// a seeded random order and checks independence on each weight space.
FreenessReport freeness_check(const InducedModule& m, const TruncationWindow& w, std::uint64_t seed = 1);

struct RepresentationReport {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

/// act(x, act(y, v)) - act(y, act(x, v)) = act([x,y], v) for all given pairs
/// and labels; symbols the module does not act by are skipped.
RepresentationReport representation_check(const WeightModule& m, const std::vector<Symbol>& xs,
                                          const std::vector<Symbol>& ys, const std::vector<LabelId>& labels);

}  // namespace affind
