#include "affind/module.hpp"

#include <random>
#include <sstream>

namespace affind {

void add_term(ModuleVector& y, LabelId id, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = y.try_emplace(id, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) y.erase(it);
}

void axpy(ModuleVector& y, const Rational& a, const ModuleVector& x) {
  if (a.is_zero()) return;
  for (const auto& [id, c] : x) add_term(y, id, a * c);
}

ModuleVector scaled(const ModuleVector& x, const Rational& a) {
  ModuleVector out;
  if (a.is_zero()) return out;
  for (const auto& [id, c] : x) out.emplace_hint(out.end(), id, a * c);
  return out;
}

ModuleVector operator+(ModuleVector a, const ModuleVector& b) {
  axpy(a, 1, b);
  return a;
}

ModuleVector operator-(ModuleVector a, const ModuleVector& b) {
  axpy(a, -1, b);
  return a;
}

std::string TruncationWindow::str() const {
  std::string s = "D=" + std::to_string(D) + " H=" + std::to_string(H);
  if (cap) s += " cap=" + std::to_string(cap);
  return s;
}

std::size_t WindowBasis::total() const {
  std::size_t n = 0;
  for (const auto& [mu, ids] : spaces) n += ids.size();
  return n;
}

const std::vector<LabelId>& WindowBasis::at(const Degree& mu) const {
  static const std::vector<LabelId> empty;
  auto it = spaces.find(mu);
  return it == spaces.end() ? empty : it->second;
}

Character character_from(const WindowCounts& counts) {
  Character ch;
  for (const auto& [key, n] : counts)
    if (n) ch[key.first] += n;
  return ch;
}

Character character_from(const WindowBasis& basis) {
  Character ch;
  for (const auto& [mu, ids] : basis.spaces)
    if (!ids.empty()) ch[mu] = static_cast<long>(ids.size());
  return ch;
}

const WindowBasis& WeightModule::window_basis(const TruncationWindow& w) const {
  {
    std::lock_guard lock(window_mu_);
    auto it = bases_.find(w);
    if (it != bases_.end()) return *it->second;
  }
  auto built = std::make_unique<WindowBasis>(build_window_basis(w));
  if (w.cap)
    for (const auto& [mu, ids] : built->spaces)
      if (ids.size() > w.cap) built->overflow = true;
  std::lock_guard lock(window_mu_);
  auto [it, inserted] = bases_.try_emplace(w, std::move(built));
  return *it->second;
}

const WindowCounts& WeightModule::window_counts(const TruncationWindow& w) const {
  {
    std::lock_guard lock(window_mu_);
    auto it = counts_.find(w);
    if (it != counts_.end()) return *it->second;
  }
  auto built = std::make_unique<WindowCounts>(build_window_counts(w));
  std::lock_guard lock(window_mu_);
  auto [it, inserted] = counts_.try_emplace(w, std::move(built));
  return *it->second;
}

ModuleVector WeightModule::act(const Symbol& x, const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [id, c] : v) axpy(out, c, act(x, id));
  return out;
}

ModuleVector WeightModule::act(const LieElement& x, const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [s, a] : x) axpy(out, a, act(s, v));
  return out;
}

std::string str(const WeightModule& m, const ModuleVector& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, c] : v) {
    if (c < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    const Rational a = abs(c);
    if (a != 1) os << a.str() << "·";
    os << m.label(id);
    first = false;
  }
  return os.str();
}

Clipped clip(const WeightModule& m, ModuleVector v, const TruncationWindow& w) {
  Clipped out;
  for (auto it = v.begin(); it != v.end();) {
    if (m.admits(it->first, w)) {
      ++it;
    } else {
      ++out.dropped;
      it = v.erase(it);
    }
  }
  out.vector = std::move(v);
  return out;
}

Clipped act_clipped(const WeightModule& m, const Symbol& x, const ModuleVector& v, const TruncationWindow& w) {
  return clip(m, m.act(x, v), w);
}

Clipped act_clipped(const WeightModule& m, const LieElement& x, const ModuleVector& v, const TruncationWindow& w) {
  return clip(m, m.act(x, v), w);
}

bool ActionCache::find(const Symbol& x, LabelId v, ModuleVector& out) const {
  std::lock_guard lock(mu_);
  auto it = table_.find({x, v});
  if (it == table_.end()) return false;
  out = it->second;
  return true;
}

void ActionCache::store(const Symbol& x, LabelId v, const ModuleVector& r) const {
  std::lock_guard lock(mu_);
  table_.try_emplace({x, v}, r);
}

std::string HighestWeight::str() const {
  std::string s = "(";
  for (std::size_t p = 0; p < h.size(); ++p) s += (p ? "," : "") + h[p].str();
  return s + ";d=" + d.str() + ")";
}

HighestWeight generic_weight(int rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 200), den(7, 29), sign(0, 1);
  auto draw = [&] {
    const int n = num(rng);
    const int d = den(rng);
    return Rational(sign(rng) ? n : -n, d);
  };
  HighestWeight hw;
  for (int p = 0; p < rank; ++p) hw.h.push_back(draw());
  hw.d = draw();
  return hw;
}

OneDimModule::OneDimModule(const LoopAlgebra& algebra, HighestWeight lambda, Rational charge)
    : WeightModule(algebra), lambda_(std::move(lambda)), charge_(std::move(charge)) {
  if (static_cast<int>(lambda_.h.size()) != algebra.rank())
    throw std::invalid_argument("highest weight has " + std::to_string(lambda_.h.size()) + " Cartan values, expected " +
                                std::to_string(algebra.rank()));
}

ModuleVector OneDimModule::act(const Symbol& x, LabelId v) const {
  if (!acts(x)) throw NotInAlgebra(algebra().str(x) + " does not act on C_λ");
  Rational c;
  switch (x.kind) {
    case Symbol::C:
      c = charge_;
      break;
    case Symbol::D:
      c = lambda_.d;
      break;
    default:
      c = lambda_.h[static_cast<std::size_t>(x.i)];
  }
  ModuleVector out;
  add_term(out, v, c);
  return out;
}

WindowBasis OneDimModule::build_window_basis(const TruncationWindow&) const {
  WindowBasis b;
  b.spaces[Degree::zero(algebra().rank())] = {0};
  return b;
}

WindowCounts OneDimModule::build_window_counts(const TruncationWindow&) const {
  return {{{Degree::zero(algebra().rank()), 0}, 1}};
}

ModuleVector SpanBuilder::reduce(ModuleVector v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const LabelId pivot = it->first;
    const Rational c = it->second;
    axpy(v, -c, row->second);  // pivot term cancels; other labels are larger
    it = v.upper_bound(pivot);
  }
  return v;
}

bool SpanBuilder::add(const ModuleVector& v) {
  ModuleVector r = reduce(v);
  if (r.empty()) return false;
  const Rational lead = r.begin()->second;
  for (auto& [id, c] : r) c /= lead;
  const LabelId pivot = r.begin()->first;
  rows_.emplace(pivot, std::move(r));
  return true;
}

}  // namespace affind
