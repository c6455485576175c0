#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>

namespace affind {

/// Exact rational scalar used throughout the engine.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = MatrixX<Rational>;
using VectorQ = VectorX<Rational>;

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// "3", "-1/2"
std::string to_string(const Rational& q);

/// Accepts "3", "-1/2", "0.25"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Exact conversion; throws std::domain_error if q is not an integer that fits.
std::int64_t to_int64(const Rational& q);

}  // namespace affind
