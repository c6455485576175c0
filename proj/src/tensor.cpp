#include "affind/tensor.hpp"

#include "affind/linalg.hpp"

#include <functional>
#include <random>
#include <tuple>

namespace affind {

TensorModule::TensorModule(const Parabolic& p, ModulePtr V, std::shared_ptr<const FockModule> W)
    : WeightModule(p.algebra()), p_(&p), V_(std::move(V)), W_(std::move(W)) {
  if (V_->charge() != W_->charge())
    throw std::invalid_argument("tensor factors carry different charges " + V_->charge().str() + " and " +
                                W_->charge().str());
  top_ = intern(V_->top(), W_->top());
}

bool TensorModule::acts(const Symbol& x) const {
  switch (p_->classify(x)) {
    case Tag::NJ:
    case Tag::NJbar:
      return false;
    default:
      return true;
  }
}

ModuleVector TensorModule::on_V(const ModuleVector& v, LabelId w) const {
  ModuleVector out;
  for (const auto& [id, c] : v) add_term(out, intern(id, w), c);
  return out;
}

ModuleVector TensorModule::on_W(LabelId v, const ModuleVector& w) const {
  ModuleVector out;
  for (const auto& [id, c] : w) add_term(out, intern(v, id), c);
  return out;
}

ModuleVector TensorModule::act(const Symbol& x, LabelId id) const {
  if (!acts(x)) throw NotInAlgebra(algebra().str(x) + " is not in the Levi factor l_J");
  const auto [v, w] = key(id);
  switch (x.kind) {
    case Symbol::C: {
      ModuleVector out;
      add_term(out, id, charge());
      return out;
    }
    case Symbol::D:
      return on_V(V_->act(x, v), w) + on_W(v, W_->act(x, w));
    case Symbol::E:
      return on_V(V_->act(x, v), w);
    case Symbol::H:
      break;
  }
  if (x.m == 0) return on_V(V_->act(x, v), w);
  const ImaginarySplit& sp = p_->split(x.i);
  ModuleVector out;
  for (std::size_t r = 0; r < sp.levi.size(); ++r)
    if (!sp.levi[r].is_zero())
      axpy(out, sp.levi[r], on_V(V_->act(Symbol::h(p_->J_indices()[r], x.m), v), w));
  axpy(out, 1, on_W(v, W_->act_heisenberg(sp.gj, x.m, w)));
  return out;
}

Degree TensorModule::weight(LabelId id) const {
  const auto [v, w] = key(id);
  return V_->weight(v) + W_->weight(w);
}

int TensorModule::size(LabelId id) const {
  const auto [v, w] = key(id);
  return V_->size(v) + W_->size(w);
}

bool TensorModule::admits(LabelId id, const TruncationWindow& win) const {
  const auto [v, w] = key(id);
  return V_->admits(v, win) && W_->admits(w, win) && V_->size(v) + W_->size(w) <= win.D;
}

std::string TensorModule::label(LabelId id) const {
  const auto [v, w] = key(id);
  return "(" + V_->label(v) + ")⊗(" + W_->label(w) + ")";
}

bool TensorModule::label_less(LabelId a, LabelId b) const {
  const auto [va, wa] = key(a);
  const auto [vb, wb] = key(b);
  if (va != vb) return V_->label_less(va, vb);
  return W_->label_less(wa, wb);
}

WindowBasis TensorModule::build_window_basis(const TruncationWindow& win) const {
  const WindowBasis& vb = V_->window_basis(win);
  const WindowBasis& wb = W_->window_basis(win);
  WindowBasis out;
  out.overflow = vb.overflow || wb.overflow;
  for (const auto& [nu, vids] : vb.spaces)
    for (const auto& [om, wids] : wb.spaces)
      for (LabelId v : vids)
        for (LabelId w : wids)
          if (V_->size(v) + W_->size(w) <= win.D) out.spaces[nu + om].push_back(intern(v, w));
  for (auto& [mu, ids] : out.spaces)
    std::sort(ids.begin(), ids.end(), [this](LabelId a, LabelId b) { return label_less(a, b); });
  return out;
}

WindowCounts TensorModule::build_window_counts(const TruncationWindow& win) const {
  WindowCounts out;
  for (const auto& [kv, nv] : V_->window_counts(win))
    for (const auto& [kw, nw] : W_->window_counts(win)) {
      const int s = kv.second + kw.second;
      if (s <= win.D) out[{kv.first + kw.first, s}] += nv * nw;
    }
  return out;
}

ScrambledModule::ScrambledModule(ModulePtr base, const TruncationWindow& w, std::uint64_t seed)
    : WeightModule(base->algebra()), base_(std::move(base)) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (const auto& [mu, ids] : base_->window_basis(w).spaces) {
    const auto n = static_cast<Eigen::Index>(ids.size());
    MatrixQ L = MatrixQ::Identity(n, n), U = MatrixQ::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < i; ++j) {
        L(i, j) = entry(rng);
        U(j, i) = entry(rng);
      }
    Block b;
    b.ids = ids;
    b.S = L * U;
    b.S_inv = inverse(b.S);
    auto [it, inserted] = blocks_.emplace(mu, std::move(b));
    for (std::size_t i = 0; i < ids.size(); ++i) where_[ids[i]] = {&it->second, static_cast<int>(i)};
  }
}

ModuleVector ScrambledModule::to_base(const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [id, c] : v) {
    auto it = where_.find(id);
    if (it == where_.end()) {
      add_term(out, id, c);
      continue;
    }
    const auto& [block, pos] = it->second;
    for (std::size_t j = 0; j < block->ids.size(); ++j)
      add_term(out, block->ids[j], c * block->S(static_cast<Eigen::Index>(j), pos));
  }
  return out;
}

ModuleVector ScrambledModule::from_base(const ModuleVector& v) const {
  ModuleVector out;
  std::map<const Block*, VectorQ> coords;
  for (const auto& [id, c] : v) {
    auto it = where_.find(id);
    if (it == where_.end()) {
      add_term(out, id, c);
      continue;
    }
    const auto& [block, pos] = it->second;
    auto [cit, inserted] = coords.try_emplace(block, VectorQ::Zero(static_cast<Eigen::Index>(block->ids.size())));
    cit->second(pos) += c;
  }
  for (const auto& [block, c] : coords) {
    const VectorQ x = block->S_inv * c;
    for (Eigen::Index j = 0; j < x.size(); ++j) add_term(out, block->ids[static_cast<std::size_t>(j)], x(j));
  }
  return out;
}

ModuleVector ScrambledModule::act(const Symbol& x, LabelId v) const {
  return from_base(base_->act(x, to_base({{v, Rational(1)}})));
}

namespace {

struct Word {
  std::vector<LieElement> factors;  ///< applied right to left
  Degree weight;
  int size = 0;
};

ModuleVector apply(const WeightModule& N, const Word& word, ModuleVector v) {
  for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) v = N.act(*it, v);
  return v;
}

/// Keeps the words whose images on v are independent, per weight.
std::vector<Word> independent_words(const WeightModule& N, const std::vector<Word>& words, const ModuleVector& v,
                                    std::map<Degree, std::size_t>& dims) {
  std::map<Degree, SpanBuilder> spans;
  std::vector<Word> out;
  for (const auto& w : words)
    if (spans[w.weight].add(apply(N, w, v))) {
      out.push_back(w);
      ++dims[w.weight];
    }
  return out;
}

}  // namespace

FactorizationReport tensor_factorize(const WeightModule& N, const Parabolic& p, const TruncationWindow& win) {
  if (N.charge().is_zero())
    throw std::invalid_argument("tensor_factorize: charge 0 (inverting U(G_J)_+ needs a nonzero central charge)");
  const auto& g = N.algebra();
  const Degree zero = Degree::zero(g.rank());
  const auto& top_ids = N.window_basis(win).at(zero);
  if (top_ids.empty()) throw std::invalid_argument("tensor_factorize: empty top weight space");

  // v: top-weight vector killed by (G_J)_+ on generators of degree 1..max(D,1)
  std::map<std::tuple<int, int, LabelId>, Eigen::Index> row_of;
  std::vector<std::vector<std::pair<Eigen::Index, Rational>>> cols(top_ids.size());
  for (std::size_t c = 0; c < top_ids.size(); ++c)
    for (int t = 0; t < p.gj_dim(); ++t)
      for (int k = 1; k <= std::max(win.D, 1); ++k)
        for (const auto& [id, a] : N.act(p.gj_element(t, k), ModuleVector{{top_ids[c], Rational(1)}})) {
          auto [it, ins] = row_of.try_emplace({t, k, id}, static_cast<Eigen::Index>(row_of.size()));
          cols[c].emplace_back(it->second, a);
        }
  MatrixQ A = MatrixQ::Zero(static_cast<Eigen::Index>(row_of.size()), static_cast<Eigen::Index>(top_ids.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, a] : cols[c]) A(r, static_cast<Eigen::Index>(c)) += a;
  const MatrixQ K = row_of.empty() ? MatrixQ(MatrixQ::Identity(A.cols(), A.cols())) : kernel(A);
  if (K.cols() == 0) throw std::invalid_argument("tensor_factorize: (G_J)_+ annihilates no top-weight vector of N");
  ModuleVector v;
  for (std::size_t c = 0; c < top_ids.size(); ++c) add_term(v, top_ids[c], K(static_cast<Eigen::Index>(c), 0));

  FactorizationReport rep;
  rep.v = str(N, v);

  // U(l_J⁰) words: PBW monomials of the Verma splitting
  const LeviVermaSplitting levi(p);
  std::vector<Word> xs;
  for (const auto& mono : enumerate_monomials(levi, win, true)) {
    Word w{{}, zero, 0};
    for (const auto& f : mono) {
      w.factors.emplace_back(f);
      w.weight += g.degree(f);
      w.size += std::abs(f.m);
    }
    xs.push_back(std::move(w));
  }
  // U(G_J) words: monomials in the negative modes
  std::vector<Word> ys;
  Word cur{{}, zero, 0};
  std::function<void(int, int)> rec = [&](int from, int budget) {
    ys.push_back(cur);
    for (int idx = from; idx < win.D * p.gj_dim(); ++idx) {
      const int k = idx / p.gj_dim() + 1, t = idx % p.gj_dim();
      if (k > budget) continue;
      cur.factors.push_back(p.gj_element(t, -k));
      cur.weight.delta -= k;
      cur.size += k;
      rec(idx, budget - k);
      cur.factors.pop_back();
      cur.weight.delta += k;
      cur.size -= k;
    }
  };
  rec(0, win.D);
  xs = independent_words(N, xs, v, rep.V_dims);
  ys = independent_words(N, ys, v, rep.W_dims);

  for (const auto& [mu, ids] : N.window_basis(win).spaces) {
    FactorizationSlice s;
    s.weight = mu;
    s.dim = ids.size();
    SpanBuilder span;
    bool inside = true;
    for (const auto& x : xs)
      for (const auto& y : ys) {
        if (x.weight + y.weight != mu || x.size + y.size > win.D) continue;
        const ModuleVector img = apply(N, x, apply(N, y, v));
        for (const auto& [id, c] : img) inside = inside && N.admits(id, win);
        span.add(img);
        ++s.pairs;
      }
    s.rank = span.rank();
    s.injective = s.rank == s.pairs;
    s.surjective = inside && s.rank == s.dim;
    rep.full_rank = rep.full_rank && s.injective && s.surjective;
    rep.slices.push_back(std::move(s));
  }
  return rep;
}

}  // namespace affind
