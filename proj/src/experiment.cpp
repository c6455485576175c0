#include "affind/experiment.hpp"

namespace affind {

Experiment::Experiment(const ExperimentSpec& spec, StraighteningFault sfault, BracketFault bfault) : spec_(spec) {
  const auto& m = spec.module;
  if (m.kind != "fock" && m.kind != "tensor")
    throw std::invalid_argument("module kind must be fock or tensor, got " + m.kind);
  if (m.kind == "fock" && !spec.J.empty()) throw std::invalid_argument("a fock module needs J = ∅; use tensor");
  g_ = std::make_unique<LoopAlgebra>(spec.type, bfault);
  p_ = std::make_unique<Parabolic>(*g_, spec.J);
  lambda_ = m.lambda ? *m.lambda : generic_weight(g_->rank(), spec.seed);
  if (static_cast<int>(lambda_.h.size()) != g_->rank())
    throw std::invalid_argument("lambda needs " + std::to_string(g_->rank()) + " values");
  auto C = std::make_shared<OneDimModule>(*g_, lambda_, m.charge);
  if (spec.J.empty())
    V_ = C;
  else
    V_ = std::make_shared<InducedModule>(*g_, std::make_shared<LeviVermaSplitting>(*p_), C, TotalBound::Size);
  W_ = FockModule::over_gj(*p_, {m.charge, m.phi});
  N_ = std::make_shared<TensorModule>(*p_, V_, W_);
  M_ = std::make_shared<InducedModule>(*g_, std::make_shared<ParabolicSplitting>(*p_), N_, TotalBound::Delta, sfault);
}

}  // namespace affind
