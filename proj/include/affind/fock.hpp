#pragma once

#include "affind/module.hpp"
#include "affind/subalgebra.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace affind {

struct FockSpec {
  Rational charge = 1;
  PhiTable phi;  ///< constant + is the untwisted Fock module
};

/// Fock module over a Heisenberg algebra spanned by generators
/// g_t(m) = Σ_p rows(t,p) H(p,m) and c.
///
/// The annihilating half at |m| = k is m > 0 when φ(k) = + and m < 0 when
/// φ(k) = -; labels are multisets of creation modes applied to |0>. The
/// pairing [g_t(m), g_u(-m)] = m Γ(t,u) c is read off the trace form.
class FockModule : public WeightModule {
 public:
  using Mode = std::pair<int, int>;  ///< (loop degree m, generator t)
  using Key = std::vector<Mode>;

  FockModule(const LoopAlgebra& algebra, MatrixQ generators, FockSpec spec, std::string heisenberg = "G");
  /// Fock module over the full Heisenberg subalgebra, generators H(1..N, ·).
  static std::shared_ptr<FockModule> full(const LoopAlgebra& algebra, FockSpec spec);
  /// Fock module over G_J, generators gj_basis.
  static std::shared_ptr<FockModule> over_gj(const Parabolic& p, FockSpec spec);

  int generators() const { return static_cast<int>(rows_.rows()); }
  const MatrixQ& generator_rows() const { return rows_; }
  const MatrixQ& gram() const { return gram_; }
  const FockSpec& spec() const { return spec_; }
  bool creation(int m) const;
  /// Signed loop degree of the creation modes with |m| = k.
  int creation_degree(int k) const;
  LieElement generator(int t, int m) const;

  ModuleVector act_mode(int t, int m, LabelId v) const;
  ModuleVector act_mode(int t, int m, const ModuleVector& v) const;
  /// Σ_t coords[t] g_t(m) acting on v.
  ModuleVector act_heisenberg(const std::vector<Rational>& coords, int m, LabelId v) const;

  LabelId intern(Key key) const;
  const Key& key(LabelId v) const { return labels_.key(v); }

  LabelId top() const override { return vacuum_; }
  Rational charge() const override { return spec_.charge; }
  bool acts(const Symbol& x) const override;
  ModuleVector act(const Symbol& x, LabelId v) const override;
  using WeightModule::act;
  Degree weight(LabelId v) const override;
  int size(LabelId v) const override;
  bool admits(LabelId v, const TruncationWindow& w) const override { return size(v) <= w.D; }
  std::string label(LabelId v) const override;
  std::string name() const override;
  bool label_less(LabelId a, LabelId b) const override { return key(a) < key(b); }

 protected:
  WindowBasis build_window_basis(const TruncationWindow& w) const override;
  WindowCounts build_window_counts(const TruncationWindow& w) const override;

 private:
  static void canonicalize(Key& key);

  MatrixQ rows_;
  MatrixQ gram_;
  FockSpec spec_;
  std::string heisenberg_;
  /// coordinates of H(p,·) in the generators, when it lies in their span
  std::vector<std::optional<std::vector<Rational>>> coords_;
  Interner<Key> labels_;
  LabelId vacuum_;
};

enum class AdmissibleVerdict { EvidenceAdmissible, Counterexample, Inconclusive };
std::string_view to_string(AdmissibleVerdict v);

/// Per cyclic G_k-submodule outcome. '+' stands for U(G_{kδ}), '-' for U(G_{-kδ}).
struct CyclicSubmoduleReport {
  std::string generator;
  std::size_t dim = 0;         ///< dimension of the submodule's window slice
  bool escaped = false;        ///< the submodule leaves the window
  bool plus = false, minus = false;
  std::string failing_pair;    ///< first pair without a common source, if any
};

struct AdmissibleReport {
  int k = 0;
  int depth = 0;
  AdmissibleVerdict verdict = AdmissibleVerdict::Inconclusive;
  std::string direction;  ///< "+", "-", "mixed" or "" when no direction holds
  std::vector<CyclicSubmoduleReport> cyclic;
};

/// Evidence-at-depth for the one-sided surjectivity of every cyclic
/// G_k-submodule generated by a basis vector of size <= depth. Throws on k <= 0
/// or depth < 1.
AdmissibleReport admissible_probe(const FockModule& W, int k, int depth);

}  // namespace affind
