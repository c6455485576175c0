#include "affind/verifier.hpp"

#include "affind/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <set>
#include <thread>

namespace affind {

int thread_count() {
  const char* s = std::getenv("AFFIND_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const long n = std::strtol(s, &end, 10);
  if (*end != '\0' || n < 1) return 1;
  return static_cast<int>(std::min<long>(n, 256));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

int generator_bound(const TruncationWindow& w) { return 2 * w.D + 2; }

namespace {

// m = 0, 1, -1, 2, -2, ...
std::vector<int> sweep(int bound) {
  std::vector<int> out{0};
  for (int k = 1; k <= bound; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

std::vector<Symbol> positive_symbols(const Parabolic& p, int bound, const std::function<bool(const Symbol&)>& keep) {
  const int n = p.algebra().rank() + 1;
  std::vector<Symbol> out;
  for (int m : sweep(bound))
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Symbol s = Symbol::e(i, j, m);
        if (p.classify(s) == Tag::NJ && keep(s)) out.push_back(s);
      }
  return out;
}

std::size_t top_dim(const InducedModule& M, const std::vector<LabelId>& space) {
  return static_cast<std::size_t>(
      std::count_if(space.begin(), space.end(), [&](LabelId id) { return M.key(id).mono.empty(); }));
}

int common_height(const InducedModule& M, const ModuleVector& v) {
  if (v.empty()) throw std::invalid_argument("zero vector");
  const Degree mu = M.weight(v.begin()->first);
  const int h = M.height(v.begin()->first);
  for (const auto& [id, c] : v)
    if (M.weight(id) != mu) throw std::invalid_argument("vector is not weight-homogeneous: " + str(M, v));
  return h;
}

}  // namespace

std::vector<Symbol> nj_generators(const Parabolic& p, const TruncationWindow& w) {
  return positive_symbols(p, generator_bound(w), [](const Symbol&) { return true; });
}

InvariantSpace invariants(const InducedModule& M, const Parabolic& p, const Degree& mu, const TruncationWindow& w) {
  const WeightSpaceBasis b = weight_space_basis(M, mu, w);
  if (b.overflow) throw Refusal("window " + w.str() + " overflowed its cap; the weight space is not complete");
  InvariantSpace out;
  out.weight = mu;
  out.space = b.labels;
  const auto n = static_cast<int>(b.labels.size());
  if (n == 0) {
    out.verified = true;
    return out;
  }
  const auto gens = nj_generators(p, w);
  SparseEliminator elim(n);
  for (const auto& g : gens) {
    if (elim.rank() == n) break;
    ++out.generators;
    std::map<LabelId, SparseRowQ> rows;
    for (int c = 0; c < n; ++c)
      for (const auto& [id, a] : M.act(g, b.labels[static_cast<std::size_t>(c)])) rows[id].emplace_back(c, a);
    for (const auto& [id, row] : rows) elim.add_row(row);
  }
  for (const VectorQ& k : elim.kernel()) {
    ModuleVector v;
    for (int c = 0; c < n; ++c) add_term(v, b.labels[static_cast<std::size_t>(c)], k(c));
    out.kernel.push_back(std::move(v));
  }
  std::sort(out.kernel.begin(), out.kernel.end());
  out.verified = true;
  for (const auto& v : out.kernel)
    for (const auto& g : gens)
      if (!M.act(g, v).empty()) out.verified = false;
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Theorem2Report theorem2_report(const InducedModule& M, const Parabolic& p, const TruncationWindow& w, bool force) {
  Theorem2Report rep;
  rep.window = w;
  if (M.charge().is_zero() && !force) {
    rep.reason = "central charge 0: the hypothesis a ≠ 0 fails, refusing";
    return rep;
  }
  const WindowBasis& basis = M.window_basis(w);
  rep.clip.overflow = basis.overflow;
  rep.clip.generators = nj_generators(p, w).size();
  if (basis.overflow) {
    rep.reason = "window " + w.str() + " overflowed its cap";
    return rep;
  }
  std::vector<Degree> weights;
  for (const auto& [mu, ids] : basis.spaces) weights.push_back(mu);
  std::vector<InvariantSpace> spaces(weights.size());
  parallel_for(weights.size(), [&](std::size_t i) { spaces[i] = invariants(M, p, weights[i], w); });

  rep.verdict = Verdict::Pass;
  for (const auto& s : spaces) {
    WeightVerdict wv;
    wv.weight = s.weight;
    wv.dim_space = s.space.size();
    wv.dim_invariants = s.kernel.size();
    wv.expected_top_dim = top_dim(M, s.space);
    wv.pass = s.verified && wv.dim_invariants == wv.expected_top_dim;
    rep.clip.products += s.generators * s.space.size();
    if (!wv.pass && rep.verdict == Verdict::Pass) {
      rep.verdict = Verdict::Fail;
      rep.reason = "invariants exceed the top at " + s.weight.weight_str();
      for (const auto& v : s.kernel)
        if (std::any_of(v.begin(), v.end(), [&](const auto& t) { return !M.key(t.first).mono.empty(); })) {
          rep.witness = str(M, v);
          break;
        }
    }
    rep.per_weight.push_back(std::move(wv));
  }
  if (rep.verdict == Verdict::Pass) rep.reason = "invariants equal 1 ⊗ N on every window weight";
  return rep;
}

std::optional<DescentStep> descend_height(const InducedModule& M, const Parabolic& p, const ModuleVector& v,
                                          const TruncationWindow& w) {
  const int h = common_height(M, v);
  if (h < 1) throw std::invalid_argument("descend_height needs J̄-height >= 1, got " + std::to_string(h));
  for (const auto& g : positive_symbols(p, generator_bound(w), [&](const Symbol& s) { return p.jbar_height(s) == 1; })) {
    ModuleVector uv = M.act(g, v);
    if (uv.empty()) continue;
    const int hu = common_height(M, uv);
    if (hu != h - 1) continue;
    return DescentStep{g, std::move(uv), hu};
  }
  return std::nullopt;
}

int word_degree(const ModeWord& u) {
  int k = 0;
  for (const auto& [m, t] : u) k += m;
  return k;
}

HeisReport lemma_heis_check(const FockModule& W, LabelId v, const std::vector<ModeWord>& us, int N_lo, int N_hi) {
  if (W.charge().is_zero()) throw std::invalid_argument("lemma-heis needs a nonzero central charge");
  if (W.generators() == 0 || W.gram()(0, 0).is_zero())
    throw std::invalid_argument("lemma-heis needs [x_k, x_-k] ≠ 0 for x_k = g_1(k)");
  if (N_lo > N_hi) throw std::invalid_argument("empty N range");
  std::set<int> degrees;
  std::vector<std::pair<int, ModuleVector>> terms;
  for (const auto& u : us) {
    const int k = word_degree(u);
    if (k == 0) throw std::invalid_argument("u_i must have nonzero degree");
    if (!degrees.insert(k).second) throw std::invalid_argument("degrees k_i must be pairwise distinct");
    ModuleVector uv{{v, Rational(1)}};
    for (auto it = u.rbegin(); it != u.rend(); ++it) uv = W.act_mode(it->second, it->first, uv);
    if (uv.empty()) throw std::invalid_argument("u_i v = 0");
    terms.emplace_back(k, std::move(uv));
  }
  const auto x = [&](int k, const ModuleVector& u) { return k == 0 ? ModuleVector{} : W.act_mode(0, k, u); };
  const auto z = [&](int N) {
    ModuleVector out = x(N, {{v, Rational(1)}});
    for (const auto& [k, uv] : terms) out = out + x(N - k, uv);
    return out;
  };
  HeisReport rep;
  for (int N = N_lo; N <= N_hi; ++N) {
    HeisRow row{N, !z(N).empty(), !z(-N).empty()};
    rep.holds = rep.holds && row.holds();
    rep.rows.push_back(row);
  }
  return rep;
}

std::string_view to_string(Irreducibility v) {
  switch (v) {
    case Irreducibility::IrreducibleAtWindow:
      return "irreducible-at-window";
    case Irreducibility::ReducibleWithWitness:
      return "reducible-with-witness";
    case Irreducibility::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

int measure(const WeightModule& N, const ModuleVector& n) {
  int best = 0;
  for (const auto& [id, c] : n) best = std::max(best, N.size(id) + N.height(id));
  return best;
}

std::vector<Symbol> levi_symbols(const WeightModule& N, int bound) {
  std::vector<Symbol> out;
  for (const auto& s : N.algebra().basis_window(bound))
    if (!s.is_cartan() && N.acts(s)) out.push_back(s);
  return out;
}

// Greedy walk to a multiple of the top label through strictly smaller measures.
bool raise_to_top(const WeightModule& N, ModuleVector n, const std::vector<Symbol>& syms) {
  int cur = measure(N, n);
  while (cur > 0) {
    std::optional<ModuleVector> best;
    int best_m = cur;
    for (const auto& s : syms) {
      ModuleVector r = N.act(s, n);
      if (r.empty()) continue;
      const int m = measure(N, r);
      if (m < best_m) {
        best_m = m;
        best = std::move(r);
      }
    }
    if (!best) return false;
    n = std::move(*best);
    cur = best_m;
  }
  return !n.empty();
}

}  // namespace

IrreducibilityReport irreducibility_probe(const InducedModule& M, const Parabolic& p, const TruncationWindow& w) {
  IrreducibilityReport rep;
  rep.trivial_window = w.D == 0 && w.H == 0;
  rep.theorem2 = theorem2_report(M, p, w, true);
  if (rep.theorem2.verdict == Verdict::Fail) {
    rep.verdict = Irreducibility::ReducibleWithWitness;
    rep.witness = rep.theorem2.witness;
    rep.certificate = "n_J-invariant below the top: " + rep.theorem2.reason;
    return rep;
  }
  if (rep.theorem2.verdict == Verdict::Inconclusive) {
    rep.reason = rep.theorem2.reason;
    return rep;
  }

  const WeightModule& N = M.inner();
  const auto syms = levi_symbols(N, generator_bound(w));
  std::vector<LabelId> labels;
  for (const auto& [mu, ids] : M.window_basis(w).spaces) labels.insert(labels.end(), ids.begin(), ids.end());

  struct Outcome {
    bool stuck_descent = false;
    bool stuck_raise = false;
    std::size_t descents = 0;
    ModuleVector top;
  };
  std::vector<Outcome> out(labels.size());
  parallel_for(labels.size(), [&](std::size_t i) {
    ModuleVector v{{labels[i], Rational(1)}};
    while (M.height(v.begin()->first) > 0) {
      auto step = descend_height(M, p, v, w);
      if (!step) {
        out[i].stuck_descent = true;
        return;
      }
      v = std::move(step->uv);
      ++out[i].descents;
    }
    out[i].top = M.top_component(v);
    out[i].stuck_raise = !raise_to_top(N, out[i].top, syms);
  });

  rep.verdict = Irreducibility::IrreducibleAtWindow;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& o = out[i];
    rep.descents += o.descents;
    if (o.stuck_descent) {
      rep.verdict = Irreducibility::Inconclusive;
      rep.reason = "no single n_J generator lowers the height of " + M.label(labels[i]) + " within the window";
      return rep;
    }
    if (o.stuck_raise) {
      rep.witness = M.label(labels[i]);
      // The span of the non-top window labels of N is closed under every
      // tested Levi symbol modulo the top label: the walk cannot succeed.
      for (const auto& [mu, ids] : N.window_basis(w).spaces)
        for (LabelId id : ids) {
          if (id == N.top()) continue;
          for (const auto& s : syms)
            if (N.act(s, id).count(N.top())) {
              rep.verdict = Irreducibility::Inconclusive;
              rep.reason = "greedy raising of " + rep.witness + " stalled without a certificate";
              return rep;
            }
        }
      rep.verdict = Irreducibility::ReducibleWithWitness;
      rep.certificate = "descends to 1 ⊗ (" + str(N, o.top) + "); no Levi symbol with |m| <= " +
                        std::to_string(generator_bound(w)) + " maps a non-top window label of N onto " +
                        N.label(N.top());
      return rep;
    }
    ++rep.vectors;
  }
  rep.reason = "every window basis vector reaches 1 ⊗ " + N.label(N.top());
  if (rep.trivial_window) rep.reason += " (trivial window)";
  return rep;
}

}  // namespace affind
