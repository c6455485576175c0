#include "affind/linalg.hpp"

#include <algorithm>

namespace affind {

std::string to_string(const Rational& q) { return q.str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Integer scale = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) scale *= 10;
    try {
      return Rational(Integer(digits), scale);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
  }
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
}

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw std::domain_error("rational " + q.str() + " is not an integer");
  const Integer n = boost::multiprecision::numerator(q);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw std::domain_error("integer out of range");
  return n.convert_to<std::int64_t>();
}

VectorQ primitive(const VectorQ& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(v(i)));
  VectorQ w = v * Rational(l);
  Integer g = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(w(i)));
  if (g == 0) throw std::invalid_argument("primitive: zero vector");
  w /= Rational(g);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) == 0) continue;
    if (w(i) < 0) w = -w;
    break;
  }
  return w;
}

void SparseEliminator::normalize(IntRow& row) {
  Integer g = 0;
  for (const auto& [c, x] : row) {
    g = boost::multiprecision::gcd(g, x);
    if (g == 1) break;
  }
  if (g > 1)
    for (auto& e : row) e.second /= g;
  if (!row.empty() && row.front().second < 0)
    for (auto& e : row) e.second = -e.second;
}

SparseEliminator::IntRow SparseEliminator::combine(const Integer& a, const IntRow& x, const Integer& b,
                                                   const IntRow& y) {
  // a*x - b*y
  IntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const Integer* SparseEliminator::find(const IntRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  if (it == row.end() || it->first != col) return nullptr;
  return &it->second;
}

bool SparseEliminator::add_row(const SparseRowQ& qrow) {
  if (row_of_pivot_.empty()) row_of_pivot_.assign(static_cast<std::size_t>(columns_), -1);
  Integer l = 1;
  for (const auto& [c, q] : qrow) {
    if (c < 0 || c >= columns_) throw std::out_of_range("SparseEliminator: column out of range");
    l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(q));
  }
  IntRow row;
  row.reserve(qrow.size());
  for (const auto& [c, q] : qrow) {
    if (q.is_zero()) continue;
    row.emplace_back(c, boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q)));
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  // Reduce against existing pivots. Pivot rows are zero in every other pivot
  // column, so a single pass suffices.
  std::vector<int> hits;
  for (const auto& [c, x] : row)
    if (row_of_pivot_[static_cast<std::size_t>(c)] >= 0) hits.push_back(c);
  for (int c : hits) {
    const Integer* x = find(row, c);
    if (!x) continue;
    const IntRow& p = rows_[static_cast<std::size_t>(row_of_pivot_[static_cast<std::size_t>(c)])];
    const Integer pv = *find(p, c);
    const Integer xv = *x;
    const Integer g = boost::multiprecision::gcd(pv, xv);
    row = combine(pv / g, row, xv / g, p);
  }
  if (row.empty()) return false;
  normalize(row);

  const int pc = row.front().first;
  const Integer pv = row.front().second;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Integer* y = find(rows_[r], pc);
    if (!y) continue;
    const Integer yv = *y;
    const Integer g = boost::multiprecision::gcd(pv, yv);
    rows_[r] = combine(pv / g, rows_[r], yv / g, row);
    normalize(rows_[r]);
  }
  row_of_pivot_[static_cast<std::size_t>(pc)] = static_cast<int>(rows_.size());
  pivot_of_row_.push_back(pc);
  rows_.push_back(std::move(row));
  return true;
}

std::vector<VectorQ> SparseEliminator::kernel() const {
  std::vector<VectorQ> out;
  std::vector<bool> pivot(static_cast<std::size_t>(columns_), false);
  for (int c : pivot_of_row_) pivot[static_cast<std::size_t>(c)] = true;
  for (int f = 0; f < columns_; ++f) {
    if (pivot[static_cast<std::size_t>(f)]) continue;
    VectorQ v = VectorQ::Zero(columns_);
    v(f) = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Integer* y = find(rows_[r], f);
      if (!y) continue;
      const Integer& p = *find(rows_[r], pivot_of_row_[r]);
      v(pivot_of_row_[r]) = -Rational(*y, p);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace affind
