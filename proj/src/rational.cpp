#include "moran/rational.hpp"

#include "moran/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace moran {

Vector make_vector(const Rational& x) {
  Vector v(1);
  v(0) = x;
  return v;
}

Vector make_vector(const Rational& x, const Rational& y) {
  Vector v(2);
  v(0) = x;
  v(1) = y;
  return v;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string trimmed(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trimmed(text);
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw ValidationError("malformed rational '" + std::string(text) + "'");
  }
  Integer n(num[0] == '+' ? num.substr(1) : num);
  Integer d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

std::string format_rational(const Rational& q) {
  const Integer d = denominator(q);
  if (d == 1) return numerator(q).str();
  return numerator(q).str() + "/" + d.str();
}

Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

Integer floor_div(const Rational& q) {
  const Integer n = numerator(q), d = denominator(q);
  Integer r;
  mpz_fdiv_q(r.backend().data(), n.backend().data(), d.backend().data());
  return r;
}

Integer ceil_div(const Rational& q) {
  const Integer n = numerator(q), d = denominator(q);
  Integer r;
  mpz_cdiv_q(r.backend().data(), n.backend().data(), d.backend().data());
  return r;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

namespace {

// Returns m, e with |z| ~= m * 2^e and m holding the top 64 bits.
std::pair<long double, long> split_top_bits(const Integer& z) {
  const mpz_srcptr p = z.backend().data();
  if (mpz_sgn(p) == 0) return {0.0L, 0};
  const long bits = static_cast<long>(mpz_sizeinbase(p, 2));
  const long shift = bits > 64 ? bits - 64 : 0;
  mpz_t top;
  mpz_init(top);
  mpz_abs(top, p);
  mpz_tdiv_q_2exp(top, top, static_cast<mp_bitcnt_t>(shift));
  // top < 2^64 fits two 32-bit halves
  const unsigned long lo = mpz_get_ui(top) & 0xffffffffUL;
  mpz_tdiv_q_2exp(top, top, 32);
  const unsigned long hi = mpz_get_ui(top);
  mpz_clear(top);
  long double m = static_cast<long double>(hi) * 4294967296.0L + static_cast<long double>(lo);
  if (mpz_sgn(p) < 0) m = -m;
  return {m, shift};
}

}  // namespace

long double to_real(const Integer& z) {
  const auto [m, e] = split_top_bits(z);
  return std::ldexp(m, static_cast<int>(e));
}

long double to_real(const Rational& q) {
  const auto [mn, en] = split_top_bits(numerator(q));
  const auto [md, ed] = split_top_bits(denominator(q));
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

long double log_of(const Integer& z) {
  const auto [m, e] = split_top_bits(z);
  return std::log(m) + static_cast<long double>(e) * std::log(2.0L);
}

long double log_of(const Rational& q) { return log_of(numerator(q)) - log_of(denominator(q)); }

Rational sqrt_upper_bound(const Rational& q) {
  if (q <= 0) return Rational(0);
  const long double approx = std::sqrt(to_real(q));
  // Round up on a 2^-40 relative grid and bump until certified.
  const int exp2 = std::ilogb(approx) - 40;
  Integer scaled(static_cast<unsigned long long>(std::ceil(std::ldexp(approx, -exp2))) + 1);
  Rational u = exp2 >= 0 ? Rational(scaled * boost::multiprecision::pow(Integer(2), exp2))
                         : Rational(scaled, boost::multiprecision::pow(Integer(2), -exp2));
  const Rational step = exp2 >= 0 ? Rational(boost::multiprecision::pow(Integer(2), exp2))
                                  : Rational(Integer(1), boost::multiprecision::pow(Integer(2), -exp2));
  while (u * u < q) u += step;
  return u;
}

}  // namespace moran
