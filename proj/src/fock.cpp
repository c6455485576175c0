#include "affind/fock.hpp"

#include "affind/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace affind {

FockModule::FockModule(const LoopAlgebra& algebra, MatrixQ generators, FockSpec spec, std::string heisenberg)
    : WeightModule(algebra), rows_(std::move(generators)), spec_(std::move(spec)), heisenberg_(std::move(heisenberg)) {
  const int n = algebra.rank();
  if (rows_.cols() != n) throw std::invalid_argument("Fock generators must have " + std::to_string(n) + " columns");
  MatrixQ cartan(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) cartan(p, q) = algebra.trace_cartan(p, q);
  gram_ = rows_ * cartan * rows_.transpose();

  const Eigen::Index s = rows_.rows();
  for (int p = 0; p < n; ++p) {
    MatrixQ aug(n, s + 1);
    aug.leftCols(s) = rows_.transpose();
    aug.col(s) = VectorQ::Unit(n, p);
    std::vector<Eigen::Index> piv;
    const MatrixQ r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == s) {
      coords_.emplace_back(std::nullopt);
      continue;
    }
    std::vector<Rational> c(static_cast<std::size_t>(s), Rational(0));
    for (std::size_t i = 0; i < piv.size(); ++i) c[static_cast<std::size_t>(piv[i])] = r(static_cast<Eigen::Index>(i), s);
    coords_.emplace_back(std::move(c));
  }
  vacuum_ = labels_.intern({});
}

std::shared_ptr<FockModule> FockModule::full(const LoopAlgebra& algebra, FockSpec spec) {
  const int n = algebra.rank();
  return std::make_shared<FockModule>(algebra, MatrixQ::Identity(n, n), std::move(spec), "G");
}

std::shared_ptr<FockModule> FockModule::over_gj(const Parabolic& p, FockSpec spec) {
  return std::make_shared<FockModule>(p.algebra(), p.gj_rows(), std::move(spec), "G_J");
}

bool FockModule::creation(int m) const {
  if (m == 0) return false;
  const char s = spec_.phi.sign(std::abs(m));
  return (m < 0) == (s == '+');
}

int FockModule::creation_degree(int k) const { return creation(-k) ? -k : k; }

LieElement FockModule::generator(int t, int m) const {
  LieElement x;
  for (Eigen::Index p = 0; p < rows_.cols(); ++p) x.add(Symbol::h(static_cast<int>(p), m), rows_(t, p));
  return x;
}

void FockModule::canonicalize(Key& key) {
  std::sort(key.begin(), key.end(), [](const Mode& a, const Mode& b) {
    const int aa = std::abs(a.first), bb = std::abs(b.first);
    if (aa != bb) return aa < bb;
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
}

LabelId FockModule::intern(Key key) const {
  canonicalize(key);
  return labels_.intern(key);
}

ModuleVector FockModule::act_mode(int t, int m, LabelId v) const {
  ModuleVector out;
  if (m == 0) return out;
  const Key& k = key(v);
  if (creation(m)) {
    Key next = k;
    next.emplace_back(m, t);
    add_term(out, intern(std::move(next)), 1);
    return out;
  }
  // g_t(m) is a derivation against the creation modes of degree -m
  for (std::size_t i = 0; i < k.size();) {
    std::size_t j = i;
    while (j < k.size() && k[j] == k[i]) ++j;
    if (k[i].first == -m) {
      const Rational c = Rational(static_cast<long>(j - i)) * m * gram_(t, k[i].second) * spec_.charge;
      if (!c.is_zero()) {
        Key next = k;
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
        add_term(out, intern(std::move(next)), c);
      }
    }
    i = j;
  }
  return out;
}

ModuleVector FockModule::act_mode(int t, int m, const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [id, c] : v) axpy(out, c, act_mode(t, m, id));
  return out;
}

ModuleVector FockModule::act_heisenberg(const std::vector<Rational>& coords, int m, LabelId v) const {
  ModuleVector out;
  for (std::size_t t = 0; t < coords.size(); ++t)
    if (!coords[t].is_zero()) axpy(out, coords[t], act_mode(static_cast<int>(t), m, v));
  return out;
}

bool FockModule::acts(const Symbol& x) const {
  switch (x.kind) {
    case Symbol::C:
    case Symbol::D:
      return true;
    case Symbol::H:
      return x.m == 0 || coords_[static_cast<std::size_t>(x.i)].has_value();
    case Symbol::E:
      return false;
  }
  return false;
}

ModuleVector FockModule::act(const Symbol& x, LabelId v) const {
  if (!acts(x)) throw NotInAlgebra(algebra().str(x) + " does not lie in the Heisenberg algebra " + heisenberg_);
  ModuleVector out;
  switch (x.kind) {
    case Symbol::C:
      add_term(out, v, spec_.charge);
      return out;
    case Symbol::D:
      add_term(out, v, Rational(weight(v).delta));
      return out;
    default:
      break;
  }
  if (x.m == 0) return out;  // finite weight of every label is 0
  return act_heisenberg(*coords_[static_cast<std::size_t>(x.i)], x.m, v);
}

Degree FockModule::weight(LabelId v) const {
  Degree d = Degree::zero(algebra().rank());
  for (const auto& [m, t] : key(v)) d.delta += m;
  return d;
}

int FockModule::size(LabelId v) const {
  int s = 0;
  for (const auto& [m, t] : key(v)) s += std::abs(m);
  return s;
}

std::string FockModule::label(LabelId v) const {
  const Key& k = key(v);
  std::ostringstream os;
  for (std::size_t i = 0; i < k.size();) {
    std::size_t j = i;
    while (j < k.size() && k[j] == k[i]) ++j;
    os << "x[" << k[i].first << "," << k[i].second + 1 << "]";
    if (j - i > 1) os << "^" << j - i;
    os << " ";
    i = j;
  }
  os << "|0>";
  return os.str();
}

std::string FockModule::name() const {
  return "Fock(" + heisenberg_ + ", a=" + spec_.charge.str() + ", φ=" + spec_.phi.str() + ")";
}

WindowBasis FockModule::build_window_basis(const TruncationWindow& w) const {
  std::vector<Mode> modes;
  for (int k = 1; k <= w.D; ++k)
    for (int t = 0; t < generators(); ++t) modes.emplace_back(creation_degree(k), t);
  WindowBasis basis;
  Key current;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int budget) {
    const LabelId id = intern(current);
    basis.spaces[weight(id)].push_back(id);
    for (std::size_t i = from; i < modes.size(); ++i) {
      const int s = std::abs(modes[i].first);
      if (s > budget) continue;
      current.push_back(modes[i]);
      rec(i, budget - s);
      current.pop_back();
    }
  };
  rec(0, w.D);
  for (auto& [mu, ids] : basis.spaces)
    std::sort(ids.begin(), ids.end(), [this](LabelId a, LabelId b) { return label_less(a, b); });
  return basis;
}

WindowCounts FockModule::build_window_counts(const TruncationWindow& w) const {
  // (δ, size) → count, one creation mode at a time
  std::map<std::pair<int, int>, long> dp{{{0, 0}, 1}};
  for (int k = 1; k <= w.D; ++k) {
    const int c = creation_degree(k);
    for (int t = 0; t < generators(); ++t) {
      std::map<std::pair<int, int>, long> next;
      for (const auto& [state, n] : dp)
        for (int mult = 0; state.second + mult * k <= w.D; ++mult)
          next[{state.first + mult * c, state.second + mult * k}] += n;
      dp = std::move(next);
    }
  }
  WindowCounts out;
  for (const auto& [state, n] : dp) {
    Degree d = Degree::zero(algebra().rank());
    d.delta = state.first;
    out[{d, state.second}] += n;
  }
  return out;
}

std::string_view to_string(AdmissibleVerdict v) {
  switch (v) {
    case AdmissibleVerdict::EvidenceAdmissible:
      return "evidence-admissible";
    case AdmissibleVerdict::Counterexample:
      return "counterexample";
    case AdmissibleVerdict::Inconclusive:
      break;
  }
  return "inconclusive-at-depth";
}

namespace {

struct Graded {
  int grade;
  ModuleVector v;
};

/// Span of all products of n operators g_t(c) applied to s.
std::vector<ModuleVector> words(const FockModule& W, int c, int n, const ModuleVector& s) {
  std::vector<ModuleVector> layer{s};
  for (int step = 0; step < n; ++step) {
    std::vector<ModuleVector> next;
    for (const auto& v : layer)
      for (int t = 0; t < W.generators(); ++t) next.push_back(W.act_mode(t, c, v));
    layer = std::move(next);
  }
  return layer;
}

bool reachable(const FockModule& W, int c, int n, const ModuleVector& s, const ModuleVector& target) {
  SpanBuilder span;
  for (const auto& w : words(W, c, n, s)) span.add(w);
  return span.contains(target);
}

/// Does every pair of the slice have a common source in direction c?
bool direction_holds(const FockModule& W, int c, const std::vector<Graded>& slice, std::string& failing) {
  std::vector<std::pair<int, ModuleVector>> candidates;
  std::map<int, ModuleVector> sums;
  for (const auto& s : slice) {
    candidates.emplace_back(s.grade, s.v);
    axpy(sums[s.grade], 1, s.v);
  }
  for (auto& [g, v] : sums) candidates.emplace_back(g, v);
  for (std::size_t i = 0; i < slice.size(); ++i) {
    for (std::size_t j = i + 1; j < slice.size(); ++j) {
      const auto& a = slice[i];
      const auto& b = slice[j];
      bool found = false;
      for (const auto& [g, s] : candidates) {
        if (s.empty()) continue;
        const int da = a.grade - g, db = b.grade - g;
        if (da % c != 0 || db % c != 0 || da / c < 0 || db / c < 0) continue;
        if (reachable(W, c, da / c, s, a.v) && reachable(W, c, db / c, s, b.v)) {
          found = true;
          break;
        }
      }
      if (!found) {
        failing = str(W, a.v) + " ; " + str(W, b.v);
        return false;
      }
    }
  }
  return true;
}

}  // namespace

AdmissibleReport admissible_probe(const FockModule& W, int k, int depth) {
  if (k <= 0) throw std::invalid_argument("admissible_probe: k must be a positive integer");
  if (depth < 1) throw std::invalid_argument("admissible_probe: depth must be >= 1");
  AdmissibleReport report;
  report.k = k;
  report.depth = depth;
  const TruncationWindow win{depth, 0, 0};
  const int create = W.creation_degree(k);

  bool any_counter = false, any_inconclusive = false;
  for (const auto& [mu, ids] : W.window_basis(win).spaces) {
    for (LabelId s0 : ids) {
      CyclicSubmoduleReport cr;
      cr.generator = W.label(s0);
      // window slice of U(G_k) s0, kept exact: images leaving the window are discarded whole
      std::vector<Graded> slice;
      std::map<int, SpanBuilder> spans;
      std::vector<Graded> work{{mu.delta, ModuleVector{{s0, Rational(1)}}}};
      spans[mu.delta].add(work.front().v);
      slice.push_back(work.front());
      while (!work.empty()) {
        Graded cur = std::move(work.back());
        work.pop_back();
        for (int sign : {+1, -1})
          for (int t = 0; t < W.generators(); ++t) {
            ModuleVector img = W.act_mode(t, sign * k, cur.v);
            if (img.empty()) continue;
            bool inside = true;
            for (const auto& [id, c] : img) inside = inside && W.admits(id, win);
            if (!inside) {
              cr.escaped = true;
              continue;
            }
            const int g = cur.grade + sign * k;
            if (spans[g].add(img)) {
              slice.push_back({g, img});
              work.push_back({g, img});
            }
          }
      }
      cr.dim = slice.size();
      std::string fail_create, fail_other;
      const bool c_ok = direction_holds(W, create, slice, fail_create);
      const bool o_ok = direction_holds(W, -create, slice, fail_other);
      (create < 0 ? cr.minus : cr.plus) = c_ok;
      (create < 0 ? cr.plus : cr.minus) = o_ok;
      if (!c_ok && !o_ok) {
        cr.failing_pair = fail_create;
        // a refutation only counts when the whole submodule fits in the window
        (cr.escaped ? any_inconclusive : any_counter) = true;
      }
      report.cyclic.push_back(std::move(cr));
    }
  }
  if (any_counter)
    report.verdict = AdmissibleVerdict::Counterexample;
  else if (any_inconclusive)
    report.verdict = AdmissibleVerdict::Inconclusive;
  else
    report.verdict = AdmissibleVerdict::EvidenceAdmissible;

  // the reported direction is the creation side when every submodule admits it
  const std::string cdir = create < 0 ? "-" : "+";
  const std::string odir = create < 0 ? "+" : "-";
  bool all_c = true, all_o = true;
  for (const auto& cr : report.cyclic) {
    all_c = all_c && (cdir == "-" ? cr.minus : cr.plus);
    all_o = all_o && (odir == "-" ? cr.minus : cr.plus);
  }
  if (all_c)
    report.direction = cdir;
  else if (all_o)
    report.direction = odir;
  else if (report.verdict == AdmissibleVerdict::EvidenceAdmissible)
    report.direction = "mixed";
  return report;
}

}  // namespace affind
