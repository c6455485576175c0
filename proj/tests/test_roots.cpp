#include "affind/root_system.hpp"

#include "doctest.h"

#include <set>

using namespace affind;

namespace {

AffineRoot R(std::vector<long> f, long d) { return AffineRoot::from_ints(f, d); }

AffineRoot half(std::vector<long> f, long d) {
  AffineRoot r = R(f, d);
  return r * Rational(1, 2);
}

}  // namespace

TEST_CASE("finite root counts") {
  struct Row {
    char s;
    int n;
    std::size_t positive;
  };
  const Row rows[] = {{'A', 1, 1},  {'A', 2, 3},  {'A', 4, 10}, {'B', 2, 4},  {'B', 3, 9},   {'C', 3, 9},
                      {'C', 1, 1},  {'D', 4, 12}, {'D', 5, 20}, {'E', 6, 36}, {'E', 7, 63},  {'E', 8, 120},
                      {'F', 4, 24}, {'G', 2, 6}};
  for (const auto& r : rows) {
    CAPTURE(r.s);
    CAPTURE(r.n);
    CHECK(finite_root_datum(r.s, r.n).positive_roots.size() == r.positive);
  }
}

TEST_CASE("root lengths") {
  const auto g2 = finite_root_datum('G', 2);
  int lng = 0;
  for (bool b : g2.is_long) lng += b;
  CHECK(lng == 3);
  const auto b3 = finite_root_datum('B', 3);
  lng = 0;
  for (bool b : b3.is_long) lng += b;
  CHECK(lng == 6);  // ±ε_i±ε_j
}

TEST_CASE("affine type tokens") {
  CHECK(AffineType::parse("A1^1").token() == "A1^1");
  CHECK(AffineType::parse("A2^2").odd_twisted_a());
  CHECK_FALSE(AffineType::parse("A3^2").odd_twisted_a());
  CHECK(AffineType::parse("D4^3").finite_type() == std::pair<char, int>{'G', 2});
  CHECK(AffineType::parse("E6^2").finite_type() == std::pair<char, int>{'F', 4});
  CHECK(AffineType::parse("A5^2").finite_type() == std::pair<char, int>{'C', 3});
  CHECK_THROWS(AffineType::parse("B2^2"));
  CHECK_THROWS(AffineType::parse("E9^1"));
  CHECK_THROWS(AffineType::parse("A1"));
}

TEST_CASE("classify_root examples") {
  const auto a11 = AffineType::parse("A1^1");
  CHECK(classify_root(a11, R({1}, 3)) == RootClass::Real);
  CHECK(classify_root(a11, R({0}, 0)) == RootClass::NotARoot);
  CHECK(classify_root(a11, R({2}, 1)) == RootClass::NotARoot);
  CHECK(classify_root(a11, R({0}, -4)) == RootClass::Imaginary);
  const auto a22 = AffineType::parse("A2^2");
  CHECK(classify_root(a22, half({1}, 1)) == RootClass::Real);
  CHECK(classify_root(a22, half({1}, -3)) == RootClass::Real);
  CHECK(classify_root(a22, half({1}, 2)) == RootClass::NotARoot);
  CHECK(classify_root(a22, R({1}, 2)) == RootClass::Real);
  CHECK(classify_root(a22, R({1}, 1)) == RootClass::NotARoot);
  const auto d43 = AffineType::parse("D4^3");
  // G2: α1 short, α2 long
  CHECK(classify_root(d43, R({1, 0}, 1)) == RootClass::Real);
  CHECK(classify_root(d43, R({0, 1}, 1)) == RootClass::NotARoot);
  CHECK(classify_root(d43, R({0, 1}, 3)) == RootClass::Real);
}

TEST_CASE("positive_real_window") {
  const auto a11 = AffineType::parse("A1^1");
  auto w0 = positive_real_window(a11, 0);
  REQUIRE(w0.size() == 1);
  CHECK(w0[0] == R({1}, 0));
  auto w1 = positive_real_window(a11, 1);
  CHECK(w1.size() == 3);
  CHECK(w1.front() == R({1}, -1));
  CHECK(positive_real_window(a11, 5).size() == 11);
  CHECK(positive_real_window(AffineType::parse("A2^1"), 1).size() == 9);
  for (const auto& r : positive_real_window(AffineType::parse("A4^2"), 3)) {
    CHECK(classify_root(AffineType::parse("A4^2"), r) == RootClass::Real);
    CHECK(classify_root(AffineType::parse("A4^2"), -r) == RootClass::Real);
  }
}

TEST_CASE("symmetry and disjointness on windows") {
  for (const char* tok : {"A1^1", "A2^1", "B3^1", "G2^1", "A2^2", "A3^2", "A4^2", "D4^3", "E6^2", "D5^2"}) {
    CAPTURE(tok);
    const AffineRootSystem rs(AffineType::parse(tok));
    for (const auto& r : rs.roots_window(3)) {
      const auto c = rs.classify(r);
      CHECK(c != RootClass::NotARoot);
      CHECK(rs.classify(-r) == c);
    }
  }
}

TEST_CASE("j_height") {
  CHECK(j_height(R({-2}, 3), {}) == 2);
  CHECK(j_height(R({5, -1}, -1), {1}) == 1);
  CHECK_FALSE(j_height(R({1}, 0), {}).has_value());
  // additivity
  const AffineRoot a = R({-1, 2, -3}, 1), b = R({-2, -1, 0}, -4);
  const NodeSet J{2};
  CHECK(*j_height(a + b, J) == *j_height(a, J) + *j_height(b, J));
}

TEST_CASE("membership predicates") {
  const AffineRootSystem a11(AffineType::parse("A1^1"));
  CHECK_FALSE(in_P_nat(a11, R({-1}, 7)));
  CHECK(in_P_nat(a11, R({1}, -7)));
  CHECK(in_P_nat(a11, R({0}, 2)));
  PhiTable phi;
  phi.set(2, '-');
  CHECK(in_P_phi(a11, R({0}, -2), phi));
  CHECK_FALSE(in_P_phi(a11, R({0}, 2), phi));
  const AffineRootSystem a21(AffineType::parse("A2^1"));
  CHECK(in_Delta_J(a21, R({1, 0}, -4), {1}));
  CHECK_FALSE(in_Delta_J(a21, R({1, 1}, 0), {1}));
  CHECK_THROWS(in_P_nat(a11, R({2}, 0)));

  // quasi-partition: exactly one of ±ρ in P
  PhiTable mixed('-');
  mixed.set(1, '+').set(3, '+');
  for (const auto& r : a21.roots_window(4)) {
    CHECK(in_P_nat(a21, r) != in_P_nat(a21, -r));
    CHECK(in_P_phi(a21, r, mixed) != in_P_phi(a21, -r, mixed));
  }
}

TEST_CASE("connected components") {
  const auto a3 = finite_root_datum('A', 3);
  CHECK(connected_components(a3, {1, 3}) == std::vector<NodeSet>{{1}, {3}});
  CHECK(connected_components(a3, {1, 2}) == std::vector<NodeSet>{{1, 2}});
  CHECK(connected_components(a3, {}).empty());
}
