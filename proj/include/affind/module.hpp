#pragma once

#include "affind/loop_algebra.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace affind {

using LabelId = std::uint32_t;

/// Sparse vector over the label basis of a module; zero coefficients are never stored.
using ModuleVector = std::map<LabelId, Rational>;

void axpy(ModuleVector& y, const Rational& a, const ModuleVector& x);
void add_term(ModuleVector& y, LabelId id, const Rational& c);
ModuleVector scaled(const ModuleVector& x, const Rational& a);
ModuleVector operator+(ModuleVector a, const ModuleVector& b);
ModuleVector operator-(ModuleVector a, const ModuleVector& b);

/// Finite slice of a graded module.
///
/// D bounds loop degrees: every factor of a label has |m| <= D, label sizes
/// (Σ|m| over factors of a Levi-module label) are <= D, and induced-module
/// weights have |δ-offset| <= D. H bounds the height measure of the module
/// (J̄-height for induced modules, J-depth for Verma factors). cap, when
/// nonzero, flags weight spaces larger than cap.
struct TruncationWindow {
  int D = 0;
  int H = 0;
  std::size_t cap = 0;

  auto operator<=>(const TruncationWindow&) const = default;
  std::string str() const;
};

struct WindowBasis {
  std::map<Degree, std::vector<LabelId>> spaces;
  bool overflow = false;

  std::size_t total() const;
  const std::vector<LabelId>& at(const Degree& mu) const;
};

/// Window label counts keyed by (weight offset, size).
using WindowCounts = std::map<std::pair<Degree, int>, long>;
/// weight offset → dimension
using Character = std::map<Degree, long>;
Character character_from(const WindowCounts& counts);
Character character_from(const WindowBasis& basis);

/// Thrown when a module is asked to act by an element outside its Lie algebra.
class NotInAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A weight module with a distinguished top label, exact action on labels and
/// two independent routes to its truncated character.
class WeightModule {
 public:
  explicit WeightModule(const LoopAlgebra& algebra) : algebra_(&algebra) {}
  virtual ~WeightModule() = default;
  WeightModule(const WeightModule&) = delete;
  WeightModule& operator=(const WeightModule&) = delete;

  const LoopAlgebra& algebra() const { return *algebra_; }

  virtual LabelId top() const = 0;
  virtual Rational charge() const = 0;
  virtual bool acts(const Symbol& x) const = 0;
  /// Throws NotInAlgebra when !acts(x).
  virtual ModuleVector act(const Symbol& x, LabelId v) const = 0;
  /// Weight of a label as an offset from the top weight.
  virtual Degree weight(LabelId v) const = 0;
  virtual int size(LabelId v) const = 0;
  virtual int height(LabelId) const { return 0; }
  virtual bool admits(LabelId v, const TruncationWindow& w) const = 0;
  virtual std::string label(LabelId v) const = 0;
  virtual std::string name() const = 0;
  /// Deterministic order on labels, independent of interning history.
  virtual bool label_less(LabelId a, LabelId b) const { return a < b; }

  /// Enumeration route; cached per window.
  const WindowBasis& window_basis(const TruncationWindow& w) const;
  /// Generating-function route; cached per window.
  const WindowCounts& window_counts(const TruncationWindow& w) const;

  ModuleVector act(const Symbol& x, const ModuleVector& v) const;
  ModuleVector act(const LieElement& x, const ModuleVector& v) const;

 protected:
  virtual WindowBasis build_window_basis(const TruncationWindow& w) const = 0;
  virtual WindowCounts build_window_counts(const TruncationWindow& w) const = 0;

 private:
  const LoopAlgebra* algebra_;
  mutable std::mutex window_mu_;
  mutable std::map<TruncationWindow, std::unique_ptr<WindowBasis>> bases_;
  mutable std::map<TruncationWindow, std::unique_ptr<WindowCounts>> counts_;
};

using ModulePtr = std::shared_ptr<const WeightModule>;

/// "3·x[-1,1] |0> - 1/2·|0>"
std::string str(const WeightModule& m, const ModuleVector& v);

/// Result of an action with out-of-window terms removed.
struct Clipped {
  ModuleVector vector;
  std::size_t dropped = 0;
  bool clipped() const { return dropped > 0; }
};
Clipped clip(const WeightModule& m, ModuleVector v, const TruncationWindow& w);
Clipped act_clipped(const WeightModule& m, const Symbol& x, const ModuleVector& v, const TruncationWindow& w);
Clipped act_clipped(const WeightModule& m, const LieElement& x, const ModuleVector& v, const TruncationWindow& w);

/// Incrementally built span of sparse vectors (row echelon, pivot = smallest label).
class SpanBuilder {
 public:
  /// Returns true when v was not already in the span.
  bool add(const ModuleVector& v);
  bool contains(const ModuleVector& v) const { return reduce(v).empty(); }
  /// Remainder of v after elimination against the current rows.
  ModuleVector reduce(ModuleVector v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<LabelId, ModuleVector> rows_;  // pivot → row with pivot coefficient 1
};

/// Thread-safe label table with stable references.
template <typename Key>
class Interner {
 public:
  LabelId intern(const Key& k) const {
    std::lock_guard lock(mu_);
    auto [it, inserted] = index_.try_emplace(k, static_cast<LabelId>(keys_.size()));
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  const Key& key(LabelId id) const {
    std::lock_guard lock(mu_);
    return keys_.at(id);
  }
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return keys_.size();
  }

 private:
  mutable std::mutex mu_;
  mutable std::map<Key, LabelId> index_;
  mutable std::deque<Key> keys_;
};

/// Memo table for (symbol, label) → vector.
class ActionCache {
 public:
  bool find(const Symbol& x, LabelId v, ModuleVector& out) const;
  void store(const Symbol& x, LabelId v, const ModuleVector& r) const;

 private:
  mutable std::mutex mu_;
  mutable std::map<std::pair<Symbol, LabelId>, ModuleVector> table_;
};

/// Highest weight data of a one-dimensional module of H ⊕ Cc.
struct HighestWeight {
  std::vector<Rational> h;  ///< λ(H_p), p = 1..N
  Rational d = 0;           ///< λ(d)
  std::string str() const;
};

/// Deterministic generic highest weight: nonzero rationals with denominators
/// in [7, 29] drawn from a seeded mt19937_64.
HighestWeight generic_weight(int rank, std::uint64_t seed);

/// C_λ: Cartan acts by λ, c by the charge; nothing else acts.
class OneDimModule : public WeightModule {
 public:
  OneDimModule(const LoopAlgebra& algebra, HighestWeight lambda, Rational charge);

  LabelId top() const override { return 0; }
  Rational charge() const override { return charge_; }
  bool acts(const Symbol& x) const override { return x.is_cartan(); }
  ModuleVector act(const Symbol& x, LabelId v) const override;
  using WeightModule::act;
  Degree weight(LabelId) const override { return Degree::zero(algebra().rank()); }
  int size(LabelId) const override { return 0; }
  bool admits(LabelId, const TruncationWindow&) const override { return true; }
  std::string label(LabelId) const override { return "|λ>"; }
  std::string name() const override { return "C_λ"; }
  const HighestWeight& lambda() const { return lambda_; }

 protected:
  WindowBasis build_window_basis(const TruncationWindow& w) const override;
  WindowCounts build_window_counts(const TruncationWindow& w) const override;

 private:
  HighestWeight lambda_;
  Rational charge_;
};

}  // namespace affind
