#pragma once

#include "affind/fock.hpp"
#include "affind/induced.hpp"
#include "affind/module.hpp"
#include "affind/subalgebra.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace affind {

/// Worker count from AFFIND_THREADS, default 1.
int thread_count();
/// Runs fn(0..n-1) on thread_count() workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Largest |m| of an n_J generator tested against a window with loop bound D.
int generator_bound(const TruncationWindow& w);
/// E symbols tagged N_J with |m| <= generator_bound(w), in symbol order.
std::vector<Symbol> nj_generators(const Parabolic& p, const TruncationWindow& w);

/// Thrown when a window computation cannot be answered exactly.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvariantSpace {
  Degree weight;
  std::vector<LabelId> space;          ///< window basis of M_μ
  std::vector<ModuleVector> kernel;    ///< basis of the invariants
  std::size_t generators = 0;
  bool verified = false;               ///< every kernel vector re-checked against every generator
};

/// n_J-invariants of the window weight space M_μ. Generators act unclipped, so
/// the kernel is exact for the tested generator set. Throws Refusal when the
/// weight space overflowed the window cap.
InvariantSpace invariants(const InducedModule& M, const Parabolic& p, const Degree& mu, const TruncationWindow& w);

struct WeightVerdict {
  Degree weight;
  std::size_t dim_space = 0;
  std::size_t dim_invariants = 0;
  std::size_t expected_top_dim = 0;
  bool pass = false;
};

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view to_string(Verdict v);

struct ClipStats {
  std::size_t generators = 0;
  std::size_t products = 0;  ///< generator-on-basis-vector evaluations
  bool overflow = false;
};

struct Theorem2Report {
  TruncationWindow window;
  std::vector<WeightVerdict> per_weight;  ///< in weight order
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  ClipStats clip;
  std::string witness;  ///< an invariant vector below the top, when the verdict is Fail
};

/// Compares the invariants with the top 1 ⊗ N on every window weight. Refuses
/// (Inconclusive) at charge 0 unless forced, since the hypothesis a ≠ 0 fails.
Theorem2Report theorem2_report(const InducedModule& M, const Parabolic& p, const TruncationWindow& w,
                               bool force = false);

struct DescentStep {
  Symbol u;
  ModuleVector uv;
  int height = 0;  ///< J̄-height of uv
};

/// One single-generator step lowering the J̄-height by 1. The J̄-height 1
/// generators E(α,m) are tried with m = 0, 1, -1, 2, -2, ... up to the
/// generator bound. Throws std::invalid_argument when v is zero, not
/// weight-homogeneous or of height 0; nullopt when the window is exhausted.
std::optional<DescentStep> descend_height(const InducedModule& M, const Parabolic& p, const ModuleVector& v,
                                          const TruncationWindow& w);

struct HeisRow {
  int N = 0;
  bool plus_nonzero = false;   ///< z_N ≠ 0
  bool minus_nonzero = false;  ///< z_{-N} ≠ 0
  bool holds() const { return plus_nonzero || minus_nonzero; }
};

struct HeisReport {
  std::vector<HeisRow> rows;
  bool holds = true;
};

/// A homogeneous element of U(G) as a word in modes (t, m), applied right to left.
using ModeWord = std::vector<FockModule::Mode>;
int word_degree(const ModeWord& u);

/// z_N = x_N v + Σ_i x_{N-k_i} u_i v with x_k = g_0(k), for N in [N_lo, N_hi].
/// Throws std::invalid_argument on charge 0, repeated or zero degrees k_i, or
/// u_i v = 0.
HeisReport lemma_heis_check(const FockModule& W, LabelId v, const std::vector<ModeWord>& us, int N_lo, int N_hi);

enum class Irreducibility { IrreducibleAtWindow, ReducibleWithWitness, Inconclusive };
std::string_view to_string(Irreducibility v);

struct IrreducibilityReport {
  Irreducibility verdict = Irreducibility::Inconclusive;
  Theorem2Report theorem2;
  std::size_t vectors = 0;    ///< window basis vectors driven to the top
  std::size_t descents = 0;   ///< successful height steps
  bool trivial_window = false;
  std::string witness;        ///< vector of M that fails to reach 1 ⊗ top
  std::string certificate;    ///< why the witness is stuck
  std::string reason;
};

/// Drives every window basis vector down to height 0 and then, inside 1 ⊗ N,
/// up to a multiple of the top label with Levi symbols.
IrreducibilityReport irreducibility_probe(const InducedModule& M, const Parabolic& p, const TruncationWindow& w);

}  // namespace affind
