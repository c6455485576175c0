#pragma once

#include "affind/fock.hpp"
#include "affind/induced.hpp"
#include "affind/module.hpp"
#include "affind/subalgebra.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace affind {

/// V ⊗ W as an l_J-module: l_J⁰ acts on V, G_J on W, and H(p,m) is split
/// between the two through the adapted basis of the parabolic.
class TensorModule : public WeightModule {
 public:
  using Key = std::pair<LabelId, LabelId>;

  /// Throws std::invalid_argument when the charges differ.
  TensorModule(const Parabolic& p, ModulePtr V, std::shared_ptr<const FockModule> W);

  const WeightModule& V() const { return *V_; }
  const FockModule& W() const { return *W_; }
  LabelId intern(LabelId v, LabelId w) const { return labels_.intern({v, w}); }
  const Key& key(LabelId id) const { return labels_.key(id); }

  LabelId top() const override { return top_; }
  Rational charge() const override { return W_->charge(); }
  bool acts(const Symbol& x) const override;
  ModuleVector act(const Symbol& x, LabelId v) const override;
  using WeightModule::act;
  Degree weight(LabelId v) const override;
  int size(LabelId v) const override;
  int height(LabelId v) const override { return V_->height(key(v).first); }
  bool admits(LabelId v, const TruncationWindow& w) const override;
  std::string label(LabelId v) const override;
  std::string name() const override { return V_->name() + " ⊗ " + W_->name(); }
  bool label_less(LabelId a, LabelId b) const override;

 protected:
  WindowBasis build_window_basis(const TruncationWindow& w) const override;
  WindowCounts build_window_counts(const TruncationWindow& w) const override;

 private:
  ModuleVector on_V(const ModuleVector& v, LabelId w) const;
  ModuleVector on_W(LabelId v, const ModuleVector& w) const;

  const Parabolic* p_;
  ModulePtr V_;
  std::shared_ptr<const FockModule> W_;
  Interner<Key> labels_;
  LabelId top_;
};

/// The same module in a seeded random basis: on the window slice of each weight
/// space the new basis is e'_i = Σ_j S(j,i) e_j with S = L·U, L and U unit
/// triangular with small integer entries. Labels outside the window are unchanged.
class ScrambledModule : public WeightModule {
 public:
  ScrambledModule(ModulePtr base, const TruncationWindow& w, std::uint64_t seed);

  LabelId top() const override { return base_->top(); }
  Rational charge() const override { return base_->charge(); }
  bool acts(const Symbol& x) const override { return base_->acts(x); }
  ModuleVector act(const Symbol& x, LabelId v) const override;
  using WeightModule::act;
  Degree weight(LabelId v) const override { return base_->weight(v); }
  int size(LabelId v) const override { return base_->size(v); }
  int height(LabelId v) const override { return base_->height(v); }
  bool admits(LabelId v, const TruncationWindow& w) const override { return base_->admits(v, w); }
  std::string label(LabelId v) const override { return "b'(" + base_->label(v) + ")"; }
  std::string name() const override { return "scrambled " + base_->name(); }
  bool label_less(LabelId a, LabelId b) const override { return base_->label_less(a, b); }

  ModuleVector to_base(const ModuleVector& v) const;
  ModuleVector from_base(const ModuleVector& v) const;

 protected:
  WindowBasis build_window_basis(const TruncationWindow& w) const override { return base_->window_basis(w); }
  WindowCounts build_window_counts(const TruncationWindow& w) const override { return base_->window_counts(w); }

 private:
  struct Block {
    std::vector<LabelId> ids;
    MatrixQ S, S_inv;
  };
  ModulePtr base_;
  std::map<Degree, Block> blocks_;
  std::map<LabelId, std::pair<const Block*, int>> where_;
};

struct FactorizationSlice {
  Degree weight;
  std::size_t dim = 0;    ///< dim N_μ on the window
  std::size_t pairs = 0;  ///< products x·y·v with wt = μ
  std::size_t rank = 0;
  bool injective = false;
  bool surjective = false;
};

struct FactorizationReport {
  std::string v;                       ///< chosen generating vector
  std::map<Degree, std::size_t> V_dims;  ///< dim (U(l_J⁰)v)_ν on the window
  std::map<Degree, std::size_t> W_dims;  ///< dim (U(G_J)v)_ω on the window
  std::vector<FactorizationSlice> slices;
  bool full_rank = true;
};

/// Recovers N ≅ V ⊗ W with V = U(l_J⁰)v and W = U(G_J)v for a vector v of the
/// top weight killed by (G_J)_+, and certifies f(xv ⊗ yv) = xyv on each window
/// weight space. Throws std::invalid_argument when the charge is 0 or no such v exists.
FactorizationReport tensor_factorize(const WeightModule& N, const Parabolic& p, const TruncationWindow& w);

}  // namespace affind
