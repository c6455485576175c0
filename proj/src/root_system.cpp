#include "affind/root_system.hpp"

#include <algorithm>
#include <queue>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace affind {

namespace {

Eigen::MatrixXi chain(int n) {
  Eigen::MatrixXi a = 2 * Eigen::MatrixXi::Identity(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = -1;
  return a;
}

void link(Eigen::MatrixXi& a, int i, int j) { a(i - 1, j - 1) = a(j - 1, i - 1) = -1; }

Eigen::MatrixXi cartan_matrix(char series, int n) {
  switch (series) {
    case 'A':
      if (n < 1) break;
      return chain(n);
    case 'B': {
      if (n < 2) break;
      Eigen::MatrixXi a = chain(n);
      a(n - 1, n - 2) = -2;  // α_n short
      return a;
    }
    case 'C': {
      if (n < 1) break;
      Eigen::MatrixXi a = chain(n);
      if (n >= 2) a(n - 2, n - 1) = -2;  // α_n long
      return a;
    }
    case 'D': {
      if (n < 4) break;
      Eigen::MatrixXi a = 2 * Eigen::MatrixXi::Identity(n, n);
      for (int i = 1; i + 1 <= n - 2; ++i) link(a, i, i + 1);
      link(a, n - 2, n - 1);
      link(a, n - 2, n);
      return a;
    }
    case 'E': {
      if (n < 6 || n > 8) break;
      Eigen::MatrixXi a = 2 * Eigen::MatrixXi::Identity(n, n);
      link(a, 1, 3);
      link(a, 2, 4);
      for (int i = 3; i < n; ++i) link(a, i, i + 1);
      return a;
    }
    case 'F': {
      if (n != 4) break;
      Eigen::MatrixXi a = chain(4);
      a(2, 1) = -2;  // α_1, α_2 long; α_3, α_4 short
      return a;
    }
    case 'G': {
      if (n != 2) break;
      Eigen::MatrixXi a = chain(2);
      a(0, 1) = -3;  // α_1 short
      return a;
    }
    default:
      break;
  }
  throw std::invalid_argument(std::string("unsupported finite type ") + series + std::to_string(n));
}

MatrixQ symmetrize(const Eigen::MatrixXi& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<Rational> len(static_cast<std::size_t>(n), Rational(0));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::queue<int> q;
    q.push(start);
    seen[static_cast<std::size_t>(start)] = true;
    len[static_cast<std::size_t>(start)] = 1;
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j) {
        if (seen[static_cast<std::size_t>(j)] || a(i, j) == 0) continue;
        // a_ij l_i = a_ji l_j
        len[static_cast<std::size_t>(j)] = Rational(a(i, j)) * len[static_cast<std::size_t>(i)] / Rational(a(j, i));
        seen[static_cast<std::size_t>(j)] = true;
        q.push(j);
      }
    }
  }
  const Rational shortest = *std::min_element(len.begin(), len.end());
  MatrixQ form(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      form(i, j) = Rational(a(i, j)) * len[static_cast<std::size_t>(i)] / shortest;  // (α_i|α_i) = 2·len/shortest
  return form;
}

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

bool positive_vector(const VectorQ& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return v(i) > 0;
  return false;
}

}  // namespace

bool FiniteRootDatum::simply_laced() const {
  return std::all_of(is_long.begin(), is_long.end(), [](bool b) { return b; });
}

Rational FiniteRootDatum::length(const Eigen::VectorXi& root) const {
  const VectorQ v = root.cast<Rational>();
  return (v.transpose() * form * v)(0, 0);
}

int FiniteRootDatum::find(const Eigen::VectorXi& root) const {
  if (root.size() != rank) return -1;
  for (std::size_t i = 0; i < positive_roots.size(); ++i)
    if (positive_roots[i] == root || positive_roots[i] == -root) return static_cast<int>(i);
  return -1;
}

FiniteRootDatum finite_root_datum(char series, int rank) {
  FiniteRootDatum d;
  d.series = series;
  d.rank = rank;
  d.cartan = cartan_matrix(series, rank);
  d.form = symmetrize(d.cartan);

  std::vector<Eigen::VectorXi> roots;
  for (int i = 0; i < rank; ++i) roots.push_back(Eigen::VectorXi::Unit(rank, i));
  auto contains = [&](const Eigen::VectorXi& v) {
    return std::find(roots.begin(), roots.end(), v) != roots.end();
  };
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const Eigen::VectorXi beta = roots[k];
    for (int i = 0; i < rank; ++i) {
      int q = 0;
      Eigen::VectorXi down = beta - Eigen::VectorXi::Unit(rank, i);
      while ((down.array() >= 0).all() && down.sum() > 0 && contains(down)) {
        ++q;
        down -= Eigen::VectorXi::Unit(rank, i);
      }
      const int pairing = d.cartan.row(i).dot(beta);
      const int p = q - pairing;
      if (p > 0) {
        Eigen::VectorXi up = beta + Eigen::VectorXi::Unit(rank, i);
        if (!contains(up)) roots.push_back(up);
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    if (a.sum() != b.sum()) return a.sum() < b.sum();
    return lex_less(a, b);
  });
  d.positive_roots = roots;

  Rational longest = 0;
  for (const auto& r : roots) longest = std::max(longest, d.length(r));
  for (const auto& r : roots) d.is_long.push_back(d.length(r) == longest);
  return d;
}

AffineType AffineType::parse(std::string_view token) {
  static const std::regex re(R"(^\s*([A-Ga-g])_?([0-9]+)\s*\^\s*\(?([123])\)?\s*$)");
  std::cmatch m;
  if (!std::regex_match(token.data(), token.data() + token.size(), m, re))
    throw std::invalid_argument("malformed affine type '" + std::string(token) + "' (expected e.g. A1^1, A2^2, D4^3)");
  AffineType t;
  t.series = static_cast<char>(std::toupper(static_cast<unsigned char>(m[1].str()[0])));
  t.rank = std::stoi(m[2].str());
  t.twist = std::stoi(m[3].str());
  bool ok = false;
  const int n = t.rank;
  switch (t.twist) {
    case 1:
      ok = (t.series == 'A' && n >= 1) || (t.series == 'B' && n >= 3) || (t.series == 'C' && n >= 2) ||
           (t.series == 'D' && n >= 4) || (t.series == 'E' && n >= 6 && n <= 8) || (t.series == 'F' && n == 4) ||
           (t.series == 'G' && n == 2);
      break;
    case 2:
      ok = (t.series == 'A' && n >= 2) || (t.series == 'D' && n >= 3) || (t.series == 'E' && n == 6);
      break;
    case 3:
      ok = t.series == 'D' && n == 4;
      break;
  }
  if (!ok) throw std::invalid_argument("'" + std::string(token) + "' is not an affine Dynkin label");
  return t;
}

std::string AffineType::token() const {
  return std::string(1, series) + std::to_string(rank) + "^" + std::to_string(twist);
}

std::pair<char, int> AffineType::finite_type() const {
  if (twist == 1) return {series, rank};
  if (series == 'A') return {'C', (rank + 1) / 2};
  if (series == 'D' && twist == 2) return {'B', rank - 1};
  if (series == 'E') return {'F', 4};
  return {'G', 2};  // D4^(3)
}

AffineRoot AffineRoot::from_ints(const std::vector<long>& coeffs, long delta) {
  VectorQ f(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) f(static_cast<Eigen::Index>(i)) = Rational(coeffs[i]);
  return {f, Rational(delta)};
}

bool AffineRoot::is_zero() const {
  return delta.is_zero() && (finite.array() == Rational(0)).all();
}

bool AffineRoot::operator<(const AffineRoot& o) const {
  if (delta != o.delta) return delta < o.delta;
  return std::lexicographical_compare(finite.data(), finite.data() + finite.size(), o.finite.data(),
                                      o.finite.data() + o.finite.size());
}

std::string AffineRoot::str() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](const Rational& c, const std::string& sym) {
    if (c.is_zero()) return;
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    const Rational a = abs(c);
    if (a != 1) os << a.str();
    os << sym;
    first = false;
  };
  for (Eigen::Index i = 0; i < finite.size(); ++i) term(finite(i), "α" + std::to_string(i + 1));
  term(delta, "δ");
  if (first) os << "0";
  return os.str();
}

std::string_view to_string(RootClass c) {
  switch (c) {
    case RootClass::Real:
      return "real";
    case RootClass::Imaginary:
      return "imaginary";
    case RootClass::NotARoot:
      break;
  }
  return "not-a-root";
}

AffineRootSystem::AffineRootSystem(AffineType type) : type_(type) {
  const auto [s, n] = type_.finite_type();
  finite_ = finite_root_datum(s, n);
}

int AffineRootSystem::delta_step(bool long_root) const {
  if (type_.untwisted() || !long_root) return 1;
  return type_.odd_twisted_a() ? 2 : type_.twist;
}

RootClass AffineRootSystem::classify(const AffineRoot& root) const {
  if (root.finite.size() != finite_.rank) return RootClass::NotARoot;
  const bool finite_zero = (root.finite.array() == Rational(0)).all();
  if (finite_zero) {
    return (is_integer(root.delta) && !root.delta.is_zero()) ? RootClass::Imaginary : RootClass::NotARoot;
  }
  const bool integral = is_integer(root.delta) && std::all_of(root.finite.data(), root.finite.data() + root.finite.size(),
                                                               [](const Rational& q) { return is_integer(q); });
  if (integral) {
    const Eigen::VectorXi f = root.finite.unaryExpr([](const Rational& q) { return static_cast<int>(to_int64(q)); });
    const int idx = finite_.find(f);
    if (idx < 0) return RootClass::NotARoot;
    const int step = delta_step(finite_.is_long[static_cast<std::size_t>(idx)]);
    return (to_int64(root.delta) % step == 0) ? RootClass::Real : RootClass::NotARoot;
  }
  if (type_.odd_twisted_a()) {
    // ½(α + (2n-1)δ) with α long
    const AffineRoot twice = root * Rational(2);
    const bool twice_integral = std::all_of(twice.finite.data(), twice.finite.data() + twice.finite.size(),
                                            [](const Rational& q) { return is_integer(q); });
    if (!twice_integral || !is_integer(twice.delta)) return RootClass::NotARoot;
    if (to_int64(twice.delta) % 2 == 0) return RootClass::NotARoot;
    const Eigen::VectorXi f = twice.finite.unaryExpr([](const Rational& q) { return static_cast<int>(to_int64(q)); });
    const int idx = finite_.find(f);
    if (idx >= 0 && finite_.is_long[static_cast<std::size_t>(idx)]) return RootClass::Real;
  }
  return RootClass::NotARoot;
}

std::vector<AffineRoot> AffineRootSystem::positive_real_window(int delta_bound) const {
  if (delta_bound < 0) throw std::invalid_argument("positive_real_window: negative bound");
  std::vector<AffineRoot> out;
  for (std::size_t i = 0; i < finite_.positive_roots.size(); ++i) {
    const VectorQ f = finite_.positive_roots[i].cast<Rational>();
    const bool lng = finite_.is_long[i];
    const int step = delta_step(lng);
    for (int n = -delta_bound; n <= delta_bound; ++n)
      if (n % step == 0) out.emplace_back(f, Rational(n));
    if (type_.odd_twisted_a() && lng) {
      for (int n = -delta_bound; n <= delta_bound + 1; ++n) {
        const Rational d(2 * n - 1, 2);
        if (abs(d) <= delta_bound) out.emplace_back(f / Rational(2), d);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AffineRoot> AffineRootSystem::roots_window(int delta_bound) const {
  std::vector<AffineRoot> out = positive_real_window(delta_bound);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(-out[i]);
  for (int k = -delta_bound; k <= delta_bound; ++k)
    if (k != 0) out.emplace_back(VectorQ::Zero(finite_.rank), Rational(k));
  std::sort(out.begin(), out.end());
  return out;
}

RootClass classify_root(const AffineType& type, const AffineRoot& root) {
  return AffineRootSystem(type).classify(root);
}

std::vector<AffineRoot> positive_real_window(const AffineType& type, int delta_bound) {
  return AffineRootSystem(type).positive_real_window(delta_bound);
}

std::optional<int> j_height(const AffineRoot& degree, const NodeSet& J) {
  if (!is_integer(degree.delta)) return std::nullopt;
  int h = 0;
  for (Eigen::Index i = 0; i < degree.finite.size(); ++i) {
    const Rational& c = degree.finite(i);
    if (!is_integer(c)) return std::nullopt;
    if (J.count(static_cast<int>(i) + 1)) continue;
    if (c > 0) return std::nullopt;
    h += static_cast<int>(-to_int64(c));
  }
  return h;
}

PhiTable& PhiTable::set(int n, char sign) {
  if (n <= 0) throw std::invalid_argument("phi is defined on positive integers");
  table_[n] = check(sign);
  return *this;
}

char PhiTable::sign(int n) const {
  auto it = table_.find(n);
  return it == table_.end() ? default_ : it->second;
}

bool PhiTable::constant_plus() const {
  return default_ == '+' && std::all_of(table_.begin(), table_.end(), [](const auto& e) { return e.second == '+'; });
}

std::string PhiTable::str() const {
  if (table_.empty()) return std::string(1, default_);
  std::ostringstream os;
  for (const auto& [n, s] : table_) os << n << ":" << s << ",";
  os << "default:" << default_;
  return os.str();
}

char PhiTable::check(char s) {
  if (s != '+' && s != '-') throw std::invalid_argument(std::string("phi sign must be '+' or '-', got '") + s + "'");
  return s;
}

namespace {

RootClass require_root(const AffineRootSystem& rs, const AffineRoot& root) {
  const RootClass c = rs.classify(root);
  if (c == RootClass::NotARoot) throw std::invalid_argument("membership query on non-root " + root.str());
  return c;
}

}  // namespace

bool in_P_nat(const AffineRootSystem& rs, const AffineRoot& root) {
  if (require_root(rs, root) == RootClass::Imaginary) return root.delta > 0;
  return positive_vector(root.finite);
}

bool in_P_phi(const AffineRootSystem& rs, const AffineRoot& root, const PhiTable& phi) {
  if (require_root(rs, root) == RootClass::Imaginary) {
    const int n = static_cast<int>(to_int64(root.delta));
    return n > 0 ? phi.sign(n) == '+' : phi.sign(-n) == '-';
  }
  return positive_vector(root.finite);
}

bool in_Delta_J(const AffineRootSystem& rs, const AffineRoot& root, const NodeSet& J) {
  if (require_root(rs, root) == RootClass::Imaginary) return true;
  for (Eigen::Index i = 0; i < root.finite.size(); ++i)
    if (root.finite(i) != 0 && !J.count(static_cast<int>(i) + 1)) return false;
  return true;
}

std::vector<NodeSet> connected_components(const FiniteRootDatum& datum, const NodeSet& J) {
  for (int j : J)
    if (j < 1 || j > datum.rank) throw std::invalid_argument("node " + std::to_string(j) + " out of range");
  std::vector<NodeSet> out;
  NodeSet left = J;
  while (!left.empty()) {
    NodeSet comp;
    std::vector<int> stack{*left.begin()};
    left.erase(left.begin());
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      comp.insert(i);
      for (auto it = left.begin(); it != left.end();) {
        if (datum.adjacent(i, *it)) {
          stack.push_back(*it);
          it = left.erase(it);
        } else {
          ++it;
        }
      }
    }
    out.push_back(comp);
  }
  std::sort(out.begin(), out.end(), [](const NodeSet& a, const NodeSet& b) { return *a.begin() < *b.begin(); });
  return out;
}

std::string to_string(const NodeSet& J) {
  std::string s = "{";
  for (int j : J) {
    if (s.size() > 1) s += ",";
    s += std::to_string(j);
  }
  return s + "}";
}

}  // namespace affind
