#include "affind/subalgebra.hpp"

#include "affind/linalg.hpp"

namespace affind {

char BorelSpec::sign(int k, int j) const {
  if (split) {
    auto it = split->find({k, j});
    if (it != split->end()) return it->second;
  }
  return phi.sign(k);
}

bool borel_membership(const Symbol& s, const BorelSpec& spec) {
  switch (s.kind) {
    case Symbol::C:
    case Symbol::D:
      return true;
    case Symbol::E:
      return s.i < s.j;  // finite part positive, any loop degree
    case Symbol::H: {
      if (s.m == 0) return true;
      const char sg = spec.sign(std::abs(s.m), s.i + 1);
      return s.m > 0 ? sg == '+' : sg == '-';
    }
  }
  return false;
}

std::string_view to_string(Tag t) {
  switch (t) {
    case Tag::NJ:
      return "N_J";
    case Tag::NJbar:
      return "N_Jbar";
    case Tag::L0:
      return "L0";
    case Tag::GJ:
      return "GJ";
    case Tag::Center:
      return "CENTER";
    case Tag::CartanOnly:
      return "CARTAN_ONLY";
    case Tag::MixedImaginary:
      return "MIXED_IMAGINARY";
  }
  return "?";
}

Parabolic::Parabolic(const LoopAlgebra& algebra, NodeSet J) : algebra_(&algebra), J_(std::move(J)) {
  const int n = algebra.rank();
  in_j_.assign(static_cast<std::size_t>(n), false);
  for (int j : J_) {
    if (j < 1 || j > n) throw std::invalid_argument("J contains node " + std::to_string(j) + " outside 1.." + std::to_string(n));
    in_j_[static_cast<std::size_t>(j - 1)] = true;
    j_index_.push_back(j - 1);
  }
  if (static_cast<int>(J_.size()) == n) throw std::invalid_argument("J must be a proper subset of {1.." + std::to_string(n) + "}");
  components_ = connected_components(algebra.finite(), J_);

  // (G_J)_{kδ}: trace-orthogonal complement of span{H(j,k) : j ∈ J}, i.e. the
  // kernel of the Cartan rows indexed by J. Independent of k.
  const int nj = static_cast<int>(j_index_.size());
  MatrixQ rows(nj, n);
  for (int r = 0; r < nj; ++r)
    for (int c = 0; c < n; ++c) rows(r, c) = algebra.trace_cartan(j_index_[static_cast<std::size_t>(r)], c);
  const MatrixQ ker = nj == 0 ? MatrixQ(MatrixQ::Identity(n, n)) : kernel(rows);
  gj_rows_ = MatrixQ(ker.cols(), n);
  for (Eigen::Index t = 0; t < ker.cols(); ++t) gj_rows_.row(t) = primitive(ker.col(t)).transpose();

  // Adapted basis matrix: rows e_j (j ∈ J) followed by the gj rows.
  MatrixQ adapted(n, n);
  for (int r = 0; r < nj; ++r) adapted.row(r) = MatrixQ::Identity(n, n).row(j_index_[static_cast<std::size_t>(r)]);
  adapted.bottomRows(gj_rows_.rows()) = gj_rows_;
  const MatrixQ coords = inverse(MatrixQ(adapted.transpose()));  // column p: coordinates of e_p
  splits_.resize(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    for (int r = 0; r < nj; ++r) splits_[static_cast<std::size_t>(p)].levi.push_back(coords(r, p));
    for (Eigen::Index t = 0; t < gj_rows_.rows(); ++t) splits_[static_cast<std::size_t>(p)].gj.push_back(coords(nj + t, p));
  }
}

bool Parabolic::levi_root(int row, int col) const {
  for (int p = std::min(row, col); p < std::max(row, col); ++p)
    if (!in_j_[static_cast<std::size_t>(p)]) return false;
  return true;
}

Tag Parabolic::classify(const Symbol& s) const {
  switch (s.kind) {
    case Symbol::C:
      return Tag::Center;
    case Symbol::D:
      return Tag::CartanOnly;
    case Symbol::H: {
      if (s.m == 0) return Tag::CartanOnly;
      if (in_j_[static_cast<std::size_t>(s.i)]) return Tag::L0;
      const auto& sp = splits_[static_cast<std::size_t>(s.i)];
      for (const auto& x : sp.levi)
        if (!x.is_zero()) return Tag::MixedImaginary;
      return Tag::GJ;
    }
    case Symbol::E:
      if (levi_root(s.i, s.j)) return Tag::L0;
      return s.i < s.j ? Tag::NJ : Tag::NJbar;
  }
  return Tag::CartanOnly;
}

int Parabolic::jbar_height(const Symbol& s) const {
  if (s.kind != Symbol::E) return 0;
  int h = 0;
  for (int p = std::min<int>(s.i, s.j); p < std::max<int>(s.i, s.j); ++p)
    if (!in_j_[static_cast<std::size_t>(p)]) ++h;
  return h;
}

int Parabolic::j_depth(const Symbol& s) const {
  if (s.kind != Symbol::E) return 0;
  int h = 0;
  for (int p = std::min<int>(s.i, s.j); p < std::max<int>(s.i, s.j); ++p)
    if (in_j_[static_cast<std::size_t>(p)]) ++h;
  return h;
}

LieElement Parabolic::gj_element(int t, int k) const {
  LieElement x;
  for (Eigen::Index p = 0; p < gj_rows_.cols(); ++p) x.add(Symbol::h(static_cast<int>(p), k), gj_rows_(t, p));
  return x;
}

std::vector<LieElement> Parabolic::gj_basis(int k) const {
  if (k == 0) throw std::invalid_argument("gj_basis: k must be nonzero");
  std::vector<LieElement> out;
  for (Eigen::Index t = 0; t < gj_rows_.rows(); ++t) out.push_back(gj_element(static_cast<int>(t), k));
  return out;
}

namespace {

// Coordinates of the H(·,m) part of x on gj_basis, summed over every m ≠ 0.
bool has_gj_part(const Parabolic& p, const LieElement& x) {
  std::map<int, std::vector<Rational>> gj;
  for (const auto& [s, c] : x) {
    if (s.kind != Symbol::H || s.m == 0) continue;
    auto& v = gj[s.m];
    const auto& sp = p.split(s.i);
    v.resize(sp.gj.size());
    for (std::size_t t = 0; t < sp.gj.size(); ++t) v[t] += c * sp.gj[t];
  }
  for (const auto& [m, v] : gj)
    for (const auto& c : v)
      if (!c.is_zero()) return true;
  return false;
}

bool in_levi(const Parabolic& p, const LieElement& x) {
  for (const auto& [s, c] : x)
    if (s.kind == Symbol::E && p.classify(s) != Tag::L0) return false;
  return !has_gj_part(p, x);
}

bool all_tagged(const Parabolic& p, const LieElement& x, Tag t) {
  for (const auto& [s, c] : x)
    if (p.classify(s) != t) return false;
  return true;
}

}  // namespace

DecompositionReport decomposition_certificates(const Parabolic& p, int bound, int kmax) {
  const auto& g = p.algebra();
  DecompositionReport rep;
  const auto note = [&](bool& flag, const std::string& what) {
    if (flag && rep.first_failure.empty()) rep.first_failure = what;
    flag = false;
  };
  std::vector<Symbol> nj, njbar;
  std::vector<LieElement> levi;
  for (const auto& s : g.basis_window(bound)) {
    switch (p.classify(s)) {
      case Tag::NJ:
        nj.push_back(s);
        break;
      case Tag::NJbar:
        njbar.push_back(s);
        break;
      case Tag::L0:
      case Tag::Center:
      case Tag::CartanOnly:
        levi.emplace_back(s);
        break;
      default:
        break;
    }
  }
  for (const auto& sp : std::vector<const std::vector<Symbol>*>{&nj, &njbar}) {
    const Tag t = sp == &nj ? Tag::NJ : Tag::NJbar;
    bool& flag = t == Tag::NJ ? rep.nj_closed : rep.njbar_closed;
    for (const auto& x : *sp)
      for (const auto& y : *sp) {
        ++rep.checks;
        const LieElement b = g.bracket(x, y);
        if (!all_tagged(p, b, t)) note(flag, "[" + g.str(x) + "," + g.str(y) + "] = " + g.str(b) + " leaves " + std::string(to_string(t)));
      }
  }
  for (const auto& x : levi)
    for (const auto& y : levi) {
      ++rep.checks;
      const LieElement b = g.bracket(x, y);
      if (!in_levi(p, b)) note(rep.levi_closed, "[" + g.str(x) + "," + g.str(y) + "] = " + g.str(b) + " leaves l_J0 + H");
    }
  for (int k = -bound; k <= bound; ++k) {
    if (k == 0) continue;
    for (int t = 0; t < p.gj_dim(); ++t) {
      const LieElement z = p.gj_element(t, k);
      for (const auto& x : levi) {
        if (x.begin()->first.kind == Symbol::D) continue;  // d grades G_J
        ++rep.checks;
        const LieElement b = g.bracket(z, x);
        if (!b.is_zero()) note(rep.gj_commutes, "[" + g.str(z) + "," + g.str(x) + "] = " + g.str(b));
      }
    }
  }
  for (int k = 1; k <= kmax; ++k) {
    ++rep.checks;
    if (p.gj_dim() + static_cast<int>(p.J().size()) != g.rank()) note(rep.dims, "dim (G_J)_kδ + |J| ≠ N");
    for (int t = 0; t < p.gj_dim(); ++t)
      for (int j : p.J_indices()) {
        ++rep.checks;
        const Rational f = g.invariant_form(p.gj_element(t, k), LieElement(Symbol::h(j, -k)));
        if (!f.is_zero()) note(rep.orthogonal, "(" + g.str(p.gj_element(t, k)) + " | H(" + std::to_string(j + 1) + "," + std::to_string(-k) + ")) ≠ 0");
      }
  }
  return rep;
}

}  // namespace affind
