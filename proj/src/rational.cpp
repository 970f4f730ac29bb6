#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>

#include "flatarc/exact_arith.hpp"

namespace flatarc {

long double to_long_double(const Integer& z) {
  if (z == 0) return 0.0L;
  Integer m = ::abs(z);
  long shift = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2)) - 64;
  if (shift > 0) m >>= shift;
  else shift = 0;
  unsigned long limb = mpz_get_ui(m.get_mpz_t());
  long double r = std::ldexp(static_cast<long double>(limb), static_cast<int>(shift));
  return z < 0 ? -r : r;
}

Integer floor_sqrt(const Integer& n) {
  require(n >= 0, "floor_sqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer floor_cbrt(const Integer& n) {
  Integer r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
  // mpz_root truncates toward zero.
  if (n < 0 && r * r * r != n) r -= 1;
  return r;
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer parse_integer(std::string_view text) {
  std::string s(text);
  Integer z;
  if (s.empty() || z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
    throw InvalidInput("malformed integer '" + s + "'");
  return z;
}

Rational::Rational(const Integer& num, const Integer& den) {
  require(den != 0, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::from_double(double x) {
  require(std::isfinite(x), "non-finite value has no rational form");
  mpq_class q(x);
  return Rational(q);
}

Rational Rational::from_long_double(long double x) {
  require(std::isfinite(x), "non-finite value has no rational form");
  if (x == 0) return Rational(0);
  int e = 0;
  long double m = std::frexp(x, &e);
  // m in [0.5, 1); 64 mantissa bits.
  long double scaled = std::ldexp(m, 64);
  bool neg = scaled < 0;
  unsigned long mant = static_cast<unsigned long>(neg ? -scaled : scaled);
  Integer num(mant);
  if (neg) num = -num;
  int exp2 = e - 64;
  if (exp2 >= 0) return Rational(Integer(num << exp2));
  Integer den = 1;
  den <<= -exp2;
  return Rational(num, den);
}

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  require(!s.empty(), "empty number");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer n = parse_integer(s.substr(0, slash));
    Integer d = parse_integer(s.substr(slash + 1));
    require(d != 0, "zero denominator in '" + s + "'");
    return Rational(n, d);
  }
  // Decimal with optional exponent.
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, any_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  require(any_digit, "malformed number '" + s + "'");
  long exp10 = 0;
  if (i < s.size()) {
    require(s[i] == 'e' || s[i] == 'E', "malformed number '" + s + "'");
    std::string e = s.substr(i + 1);
    require(!e.empty(), "malformed exponent in '" + s + "'");
    Integer ez = parse_integer(e);
    require(ez.fits_slong_p() && ::abs(ez) < 100000, "exponent out of range in '" + s + "'");
    exp10 = ez.get_si();
  }
  Integer n(digits, 10);
  if (neg) n = -n;
  long p = exp10 - frac_digits;
  Integer ten = 10, scale;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(p < 0 ? -p : p));
  if (p >= 0) return Rational(Integer(n * scale));
  return Rational(n, scale);
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return r;
}

Integer Rational::ceil() const {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return r;
}

long double Rational::to_long_double() const {
  if (sign() == 0) return 0.0L;
  Integer n = ::abs(num());
  const Integer& d = den();
  long shift = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 66;
  Integer t;
  if (shift >= 0) {
    t = n << shift;
    t /= d;
  } else {
    t = d << -shift;
    t = n / t;
  }
  long double r = flatarc::to_long_double(t);
  r = std::ldexp(r, static_cast<int>(-std::clamp(shift, long(INT_MIN / 2), long(INT_MAX / 2))));
  return sign() < 0 ? -r : r;
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

Rational operator/(const Rational& x, const Rational& y) {
  require(y.sign() != 0, "division by zero");
  return Rational(mpq_class(x.v_ / y.v_));
}

Rational pow(const Rational& x, unsigned e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), x.num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), x.den().get_mpz_t(), e);
  return Rational(n, d);
}

Rational min(const Rational& x, const Rational& y) { return y < x ? y : x; }
Rational max(const Rational& x, const Rational& y) { return x < y ? y : x; }

Integer nearest_int(const Rational& x) { return (x - Rational(1, 2)).ceil(); }

Rational fractional_part(const Rational& x) { return x - Rational(x.floor()); }

Rational fractional_norm(const Rational& x) { return (x - Rational(nearest_int(x))).abs(); }

Integer nearest_int_cbrt(const Rational& x) {
  require(x.sign() >= 0, "cube root of a negative value");
  // n = ceil(cbrt(x) - 1/2): smallest n with (n + 1/2)^3 >= x.
  Integer n = floor_cbrt(x.floor());
  while (pow(Rational(n) + Rational(1, 2), 3) < x) n += 1;
  while (n > 0 && pow(Rational(n) - Rational(1, 2), 3) >= x) n -= 1;
  return n;
}

}  // namespace flatarc
