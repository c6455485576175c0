#pragma once

#include "affind/fock.hpp"
#include "affind/induced.hpp"
#include "affind/subalgebra.hpp"
#include "affind/tensor.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace affind {

/// What N is built from. "fock" is C_λ ⊗ Fock and needs J = ∅; "tensor" is
/// V ⊗ W with V the imaginary Verma module of l_J⁰ over C_λ and W the Fock
/// module of G_J.
struct ModuleSpec {
  std::string kind = "tensor";
  Rational charge = 1;
  PhiTable phi;
  std::optional<HighestWeight> lambda;  ///< generic_weight(rank, seed) when absent
};

struct ExperimentSpec {
  AffineType type;
  NodeSet J;
  ModuleSpec module;
  TruncationWindow window{3, 2, 0};
  std::uint64_t seed = 1;
};

/// Owns the algebra, the parabolic and the modules V, W, N = V ⊗ W and
/// M = M_J(N) of one configuration.
class Experiment {
 public:
  explicit Experiment(const ExperimentSpec& spec,
                      StraighteningFault sfault = StraighteningFault::None,
                      BracketFault bfault = BracketFault::None);

  const ExperimentSpec& spec() const { return spec_; }
  const LoopAlgebra& algebra() const { return *g_; }
  const Parabolic& parabolic() const { return *p_; }
  const HighestWeight& lambda() const { return lambda_; }
  ModulePtr V() const { return V_; }
  std::shared_ptr<const FockModule> W() const { return W_; }
  std::shared_ptr<const TensorModule> N() const { return N_; }
  std::shared_ptr<const InducedModule> M() const { return M_; }

 private:
  ExperimentSpec spec_;
  std::unique_ptr<LoopAlgebra> g_;
  std::unique_ptr<Parabolic> p_;
  HighestWeight lambda_;
  ModulePtr V_;
  std::shared_ptr<const FockModule> W_;
  std::shared_ptr<const TensorModule> N_;
  std::shared_ptr<const InducedModule> M_;
};

}  // namespace affind
