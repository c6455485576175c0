#pragma once

#include "affind/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace affind {

// Dense exact linear algebra over any field-like scalar (Rational in practice).
// All routines are Gauss-Jordan with exact pivot tests; no tolerances.

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
template <typename Derived>
MatrixX<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& a,
                                       std::vector<Eigen::Index>* pivots = nullptr) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> m = a;
  Eigen::Index row = 0;
  std::vector<Eigen::Index> piv;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != Scalar(0)) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    const Scalar p = m(row, col);
    m.row(row) /= p;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col);
      m.row(r) -= f * m.row(row);
    }
    piv.push_back(col);
    ++row;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
  std::vector<Eigen::Index> piv;
  rref(a, &piv);
  return static_cast<Eigen::Index>(piv.size());
}

/// Columns of the result form a basis of {x : a x = 0}.
template <typename Derived>
MatrixX<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  std::vector<Eigen::Index> piv;
  const MatrixX<Scalar> r = rref(a, &piv);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  const Eigen::Index nfree = a.cols() - static_cast<Eigen::Index>(piv.size());
  MatrixX<Scalar> basis = MatrixX<Scalar>::Zero(a.cols(), nfree);
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < a.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = Scalar(1);
    for (std::size_t i = 0; i < piv.size(); ++i) basis(piv[i], k) = -r(static_cast<Eigen::Index>(i), f);
    ++k;
  }
  return basis;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const Eigen::Index n = a.rows();
  MatrixX<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = MatrixX<Scalar>::Identity(n, n);
  std::vector<Eigen::Index> piv;
  MatrixX<Scalar> r = rref(aug, &piv);
  if (static_cast<Eigen::Index>(piv.size()) < n || piv.back() >= n)
    throw std::domain_error("inverse: matrix is singular");
  return r.rightCols(n);
}

/// Scales a nonzero rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
VectorQ primitive(const VectorQ& v);

/// Sparse row for the incremental eliminator: (column, value), columns ascending.
using SparseRowQ = std::vector<std::pair<int, Rational>>;

/// Incremental fraction-free row reduction for large sparse systems.
///
/// Rows are cleared of denominators and kept as primitive integer rows in
/// reduced echelon form; each elimination step is a cross-multiplication
/// followed by division by the row content, so no rational arithmetic is
/// performed until the kernel is read off.
class SparseEliminator {
 public:
  explicit SparseEliminator(int columns) : columns_(columns) {}

  /// Returns true when the row increased the rank.
  bool add_row(const SparseRowQ& row);

  int rank() const { return static_cast<int>(rows_.size()); }
  int columns() const { return columns_; }

  /// Basis of the null space of all rows added so far.
  std::vector<VectorQ> kernel() const;

 private:
  using IntRow = std::vector<std::pair<int, Integer>>;
  static void normalize(IntRow& row);
  static IntRow combine(const Integer& a, const IntRow& x, const Integer& b, const IntRow& y);
  static const Integer* find(const IntRow& row, int col);

  int columns_;
  std::vector<IntRow> rows_;
  std::vector<int> pivot_of_row_;
  std::vector<int> row_of_pivot_;  // indexed by column, -1 when free
};

}  // namespace affind
