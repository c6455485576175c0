#include "affind/induced.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace affind {

namespace {

int root_coeff(const Symbol& s, int p) {
  if (s.kind != Symbol::E) return 0;
  if (s.i < s.j) return (p >= s.i && p < s.j) ? 1 : 0;
  return (p >= s.j && p < s.i) ? -1 : 0;
}

}  // namespace

bool pbw_less(const Symbol& a, const Symbol& b) {
  if (a.m != b.m) return a.m < b.m;
  const int top = std::max({a.i, a.j, b.i, b.j});
  for (int p = 0; p < top; ++p) {
    const int ca = root_coeff(a, p), cb = root_coeff(b, p);
    if (ca != cb) return ca < cb;
  }
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.i < b.i;
}

Role ParabolicSplitting::role(const Symbol& s) const {
  switch (p_->classify(s)) {
    case Tag::NJ:
      return Role::Upper;
    case Tag::NJbar:
      return Role::Lower;
    default:
      return Role::Levi;
  }
}

std::vector<Symbol> ParabolicSplitting::lower_window(int D) const {
  std::vector<Symbol> out;
  const int n = p_->algebra().rank();
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j)
      if (!p_->levi_root(i, j))
        for (int m = -D; m <= D; ++m) out.push_back(Symbol::e(i, j, m));
  std::sort(out.begin(), out.end());
  return out;
}

Role LeviVermaSplitting::role(const Symbol& s) const {
  switch (s.kind) {
    case Symbol::C:
    case Symbol::D:
      return Role::Levi;
    case Symbol::H:
      if (s.m == 0) return Role::Levi;
      if (!p_->J().count(s.i + 1)) return Role::Outside;
      return s.m < 0 ? Role::Lower : Role::Upper;
    case Symbol::E:
      if (!p_->levi_root(s.i, s.j)) return Role::Outside;
      return s.i > s.j ? Role::Lower : Role::Upper;
  }
  return Role::Outside;
}

std::vector<Symbol> LeviVermaSplitting::lower_window(int D) const {
  std::vector<Symbol> out;
  const int n = p_->algebra().rank();
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j)
      if (p_->levi_root(i, j))
        for (int m = -D; m <= D; ++m) out.push_back(Symbol::e(i, j, m));
  for (int j : p_->J())
    for (int m = -D; m < 0; ++m) out.push_back(Symbol::h(j - 1, m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> enumerate_monomials(const Splitting& s, const TruncationWindow& w, bool size_bounded) {
  std::vector<Symbol> syms = s.lower_window(w.D);
  std::sort(syms.begin(), syms.end(), [](const Symbol& a, const Symbol& b) { return pbw_less(b, a); });
  for (const auto& f : syms)
    if (s.height(f) <= 0 && !(size_bounded && f.m != 0))
      throw std::logic_error("lower symbol " + std::to_string(f.m) + " has no positive window measure");
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t from, int hbudget, int sbudget) {
    out.push_back(cur);
    for (std::size_t i = from; i < syms.size(); ++i) {
      const int h = s.height(syms[i]);
      const int sz = std::abs(syms[i].m);
      if (h > hbudget || (size_bounded && sz > sbudget)) continue;
      cur.push_back(syms[i]);
      rec(i, hbudget - h, sbudget - sz);
      cur.pop_back();
    }
  };
  rec(0, w.H, w.D);
  return out;
}

InducedModule::InducedModule(const LoopAlgebra& algebra, std::shared_ptr<const Splitting> splitting, ModulePtr inner,
                             TotalBound bound, StraighteningFault fault)
    : WeightModule(algebra), splitting_(std::move(splitting)), inner_(std::move(inner)), bound_(bound), fault_(fault) {
  intern({}, inner_->top());
}

LabelId InducedModule::intern(Monomial mono, LabelId inner) const { return labels_.intern(Key{std::move(mono), inner}); }

LabelId InducedModule::top() const { return 0; }

ModuleVector InducedModule::lift(LabelId inner_label) const { return {{intern({}, inner_label), Rational(1)}}; }

ModuleVector InducedModule::lift(const ModuleVector& inner_vector) const {
  ModuleVector out;
  for (const auto& [id, c] : inner_vector) add_term(out, intern({}, id), c);
  return out;
}

ModuleVector InducedModule::top_component(const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [id, c] : v) {
    const Key& k = key(id);
    if (k.mono.empty()) add_term(out, k.inner, c);
  }
  return out;
}

Degree InducedModule::monomial_degree(const Monomial& mono) const {
  Degree d = Degree::zero(algebra().rank());
  for (const auto& f : mono) d += algebra().degree(f);
  return d;
}

ModuleVector InducedModule::cartan_action(const Symbol& x, LabelId v) const {
  const Key& k = key(v);
  const ModuleVector base = inner_->act(x, k.inner);
  Rational value = 0;
  if (!base.empty()) {
    if (base.size() != 1 || base.begin()->first != k.inner)
      throw std::logic_error("inner module is not a weight module for " + algebra().str(x));
    value = base.begin()->second;
  }
  for (const auto& f : k.mono) {
    if (x.kind == Symbol::D)
      value += f.m;
    else if (x.kind == Symbol::H && f.kind == Symbol::E)
      value += algebra().root_on_coroot(f.i, f.j, x.i);
  }
  ModuleVector out;
  add_term(out, v, value);
  return out;
}

ModuleVector InducedModule::act(const Symbol& x, LabelId v) const {
  const Role role = splitting_->role(x);
  if (role == Role::Outside) throw NotInAlgebra(algebra().str(x) + " does not act on " + name());
  if (x.is_cartan()) return cartan_action(x, v);
  ModuleVector r;
  if (cache_.find(x, v, r)) return r;
  const Key& k = key(v);
  if (role == Role::Lower) {
    r = lower_times(x, v);
  } else if (k.mono.empty()) {
    if (role == Role::Levi) r = lift(inner_->act(x, k.inner));
  } else {
    // x f1 rest = f1 (x rest) + [x, f1] rest
    const Symbol f1 = k.mono.front();
    const LabelId rest = intern(Monomial(k.mono.begin() + 1, k.mono.end()), k.inner);
    for (const auto& [id, c] : act(x, rest)) axpy(r, c, act(f1, id));
    for (const auto& [s, c] : algebra().bracket(x, f1)) axpy(r, c, act(s, rest));
  }
  cache_.store(x, v, r);
  return r;
}

ModuleVector InducedModule::lower_times(const Symbol& f, LabelId v) const {
  const Key& k = key(v);
  ModuleVector r;
  if (k.mono.empty() || !pbw_less(f, k.mono.front())) {
    Monomial mono;
    mono.reserve(k.mono.size() + 1);
    mono.push_back(f);
    mono.insert(mono.end(), k.mono.begin(), k.mono.end());
    add_term(r, intern(std::move(mono), k.inner), 1);
    return r;
  }
  // f f1 rest = f1 (f rest) + [f, f1] rest
  const Symbol f1 = k.mono.front();
  const LabelId rest = intern(Monomial(k.mono.begin() + 1, k.mono.end()), k.inner);
  if (fault_ != StraighteningFault::DropReorderedTerm)
    for (const auto& [id, c] : act(f, rest)) axpy(r, c, act(f1, id));
  for (const auto& [s, c] : algebra().bracket(f, f1)) axpy(r, c, act(s, rest));
  return r;
}

Degree InducedModule::weight(LabelId v) const {
  const Key& k = key(v);
  return monomial_degree(k.mono) + inner_->weight(k.inner);
}

int InducedModule::size(LabelId v) const {
  const Key& k = key(v);
  int s = inner_->size(k.inner);
  for (const auto& f : k.mono) s += std::abs(f.m);
  return s;
}

int InducedModule::height(LabelId v) const {
  int h = 0;
  for (const auto& f : key(v).mono) h += splitting_->height(f);
  return h;
}

bool InducedModule::admits(LabelId v, const TruncationWindow& w) const {
  const Key& k = key(v);
  for (const auto& f : k.mono)
    if (std::abs(f.m) > w.D) return false;
  if (height(v) > w.H) return false;
  if (!inner_->admits(k.inner, w)) return false;
  if (bound_ == TotalBound::Size) return size(v) <= w.D;
  return std::abs(weight(v).delta) <= w.D;
}

std::string InducedModule::label(LabelId v) const {
  const Key& k = key(v);
  std::string s;
  for (const auto& f : k.mono) s += algebra().str(f) + " ";
  if (k.mono.empty()) s = "1 ";
  return s + "⊗ " + inner_->label(k.inner);
}

std::string InducedModule::name() const { return "Ind_" + splitting_->name() + "(" + inner_->name() + ")"; }

bool InducedModule::label_less(LabelId a, LabelId b) const {
  const Key& ka = key(a);
  const Key& kb = key(b);
  if (ka.mono != kb.mono) return ka.mono < kb.mono;
  return inner_->label_less(ka.inner, kb.inner);
}

WindowBasis InducedModule::build_window_basis(const TruncationWindow& w) const {
  const auto monos = enumerate_monomials(*splitting_, w, bound_ == TotalBound::Size);
  const WindowBasis& inner_basis = inner_->window_basis(w);
  WindowBasis basis;
  basis.overflow = inner_basis.overflow;
  for (const auto& mono : monos) {
    const Degree d = monomial_degree(mono);
    for (const auto& [nu, ids] : inner_basis.spaces) {
      if (bound_ == TotalBound::Delta && std::abs(d.delta + nu.delta) > w.D) continue;
      const Degree mu = d + nu;
      for (LabelId id : ids) {
        const LabelId v = intern(mono, id);
        if (admits(v, w)) basis.spaces[mu].push_back(v);
      }
    }
  }
  for (auto& [mu, ids] : basis.spaces)
    std::sort(ids.begin(), ids.end(), [this](LabelId a, LabelId b) { return label_less(a, b); });
  return basis;
}

WindowCounts InducedModule::build_window_counts(const TruncationWindow& w) const {
  struct State {
    Degree deg;
    int height;
    int size;
    auto operator<=>(const State&) const = default;
  };
  const bool size_bounded = bound_ == TotalBound::Size;
  std::map<State, long> dp{{State{Degree::zero(algebra().rank()), 0, 0}, 1}};
  for (const auto& f : splitting_->lower_window(w.D)) {
    const int h = splitting_->height(f);
    const int sz = std::abs(f.m);
    if (h <= 0 && !(size_bounded && sz > 0)) throw std::logic_error("lower symbol without positive window measure");
    const Degree step = algebra().degree(f);
    std::map<State, long> next = dp;
    for (const auto& [st, n] : dp) {
      State cur = st;
      for (;;) {
        cur.deg += step;
        cur.height += h;
        cur.size += sz;
        if (cur.height > w.H || (size_bounded && cur.size > w.D)) break;
        next[cur] += n;
      }
    }
    dp = std::move(next);
  }
  WindowCounts out;
  const WindowCounts& inner_counts = inner_->window_counts(w);
  for (const auto& [st, n] : dp)
    for (const auto& [key, m] : inner_counts) {
      const int total = st.size + key.second;
      if (size_bounded && total > w.D) continue;
      Degree mu = st.deg + key.first;
      if (!size_bounded && std::abs(mu.delta) > w.D) continue;
      out[{std::move(mu), total}] += n * m;
    }
  return out;
}

WeightSpaceBasis weight_space_basis(const WeightModule& m, const Degree& mu, const TruncationWindow& w) {
  const WindowBasis& b = m.window_basis(w);
  return {b.at(mu), b.overflow};
}

Character character(const WeightModule& m, const TruncationWindow& w) { return character_from(m.window_counts(w)); }

FreenessReport freeness_check(const InducedModule& m, const TruncationWindow& w, std::uint64_t seed) {
  FreenessReport rep;
  std::mt19937_64 rng(seed);
  for (const auto& [mu, ids] : m.window_basis(w).spaces) {
    SpanBuilder span;
    for (LabelId id : ids) {
      const auto& k = m.key(id);
      std::vector<std::size_t> order(k.mono.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      ModuleVector v = m.lift(k.inner);
      for (auto it = order.rbegin(); it != order.rend(); ++it) v = m.act(k.mono[*it], v);
      span.add(v);
    }
    ++rep.spaces;
    rep.vectors += ids.size();
    if (span.rank() != ids.size()) {
      rep.free = false;
      rep.deficient.push_back({mu, {span.rank(), ids.size()}});
    }
  }
  return rep;
}

RepresentationReport representation_check(const WeightModule& m, const std::vector<Symbol>& xs,
                                          const std::vector<Symbol>& ys, const std::vector<LabelId>& labels) {
  RepresentationReport rep;
  const auto& g = m.algebra();
  for (LabelId v : labels) {
    const ModuleVector e{{v, Rational(1)}};
    for (const auto& x : xs) {
      if (!m.acts(x)) continue;
      const ModuleVector xv = m.act(x, v);
      for (const auto& y : ys) {
        if (!m.acts(y)) continue;
        const LieElement xy = g.bracket(x, y);
        bool inside = true;
        for (const auto& [s, c] : xy) inside = inside && m.acts(s);
        if (!inside) continue;
        const ModuleVector lhs = m.act(x, m.act(y, v)) - m.act(y, xv);
        const ModuleVector rhs = m.act(xy, e);
        ++rep.checks;
        if (lhs != rhs) {
          if (!rep.failures)
            rep.first_failure = "[" + g.str(x) + ", " + g.str(y) + "] on " + m.label(v) + ": " + str(m, lhs) +
                                " != " + str(m, rhs);
          ++rep.failures;
        }
      }
    }
  }
  return rep;
}

}  // namespace affind
