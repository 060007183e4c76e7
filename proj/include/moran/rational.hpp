#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace moran {

/// Exact rational in lowest terms (GMP backed, no expression templates).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Points and per-axis parameters live in R^1 or R^2; the fixed upper bound keeps
/// storage inline.
using Vector = Eigen::Matrix<Rational, Eigen::Dynamic, 1, Eigen::ColMajor, 2, 1>;

Vector make_vector(const Rational& x);
Vector make_vector(const Rational& x, const Rational& y);

/// Parses "p/q" or "p" exactly. Decimals are rejected.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

Integer numerator(const Rational& q);
Integer denominator(const Rational& q);
Integer floor_div(const Rational& q);
Integer ceil_div(const Rational& q);
Rational pow(const Rational& base, unsigned exponent);

/// Conversion keeping a 64-bit mantissa (long double on x86-64).
long double to_real(const Rational& q);
long double to_real(const Integer& z);
long double log_of(const Integer& z);
long double log_of(const Rational& q);

/// Dyadic u >= sqrt(q), within about 2^-40 relative.
Rational sqrt_upper_bound(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace moran
