#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "flatarc/errors.hpp"

namespace flatarc {

using Integer = mpz_class;

long double to_long_double(const Integer& z);
Integer floor_sqrt(const Integer& n);
Integer floor_cbrt(const Integer& n);
std::string to_string(const Integer& z);
Integer parse_integer(std::string_view text);

// Exact fraction, always stored reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I n) : v_(static_cast<long>(n)) {}
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Exact binary value of a finite floating-point number.
  static Rational from_double(double x);
  static Rational from_long_double(long double x);
  // Accepts "p", "p/q", and decimals such as "-1.25e-3".
  static Rational parse(std::string_view text);

  const Integer& num() const { return v_.get_num(); }
  const Integer& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }
  Integer floor() const;
  Integer ceil() const;
  Rational abs() const { return Rational(::abs(v_)); }
  double to_double() const { return static_cast<double>(to_long_double()); }
  long double to_long_double() const;
  // "p/q", or "p" for integers.
  std::string str() const;

  friend Rational operator+(const Rational& x, const Rational& y) { return Rational(mpq_class(x.v_ + y.v_)); }
  friend Rational operator-(const Rational& x, const Rational& y) { return Rational(mpq_class(x.v_ - y.v_)); }
  friend Rational operator*(const Rational& x, const Rational& y) { return Rational(mpq_class(x.v_ * y.v_)); }
  friend Rational operator/(const Rational& x, const Rational& y);
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  Rational& operator/=(const Rational& y) { return *this = *this / y; }

  friend bool operator==(const Rational& x, const Rational& y) { return x.v_ == y.v_; }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    int c = cmp(x.v_, y.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rational pow(const Rational& x, unsigned e);
Rational min(const Rational& x, const Rational& y);
Rational max(const Rational& x, const Rational& y);

// [x]: the nearest integer, with [x] = floor(x) when {x} = 1/2.
Integer nearest_int(const Rational& x);
// {x} = x - floor(x).
Rational fractional_part(const Rational& x);
// ||x|| = |x - [x]|.
Rational fractional_norm(const Rational& x);
// Nearest integer to the real cube root of x >= 0, same tie convention.
Integer nearest_int_cbrt(const Rational& x);

// u + v*sqrt(d) with rational u, v and a positive non-square radicand d.
// Rational values are stored with v = 0 and d = 0.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(const Rational& u) : u_(u) {}
  template <std::integral I>
  QuadraticNumber(I n) : u_(n) {}
  QuadraticNumber(const Rational& u, const Rational& v, const Integer& d);

  const Rational& rational_part() const { return u_; }
  const Rational& root_coefficient() const { return v_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return d_ == 0; }
  Rational as_rational() const;

  int sign() const;
  Integer floor() const;
  QuadraticNumber conjugate() const;
  QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }
  long double to_long_double() const;
  // Closed rational interval of width at most 2^-bits containing the value.
  std::pair<Rational, Rational> enclose(unsigned bits) const;
  std::string str() const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  QuadraticNumber operator-() const;
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.u_ == y.u_ && x.v_ == y.v_ && x.d_ == y.d_;
  }

 private:
  Rational u_, v_;
  Integer d_ = 0;
};

int compare(const QuadraticNumber& x, const QuadraticNumber& y);

// A real known either exactly or through a closed rational enclosure.
// Comparisons that the enclosure cannot decide throw PrecisionExhausted.
class CertifiedReal {
 public:
  CertifiedReal() = default;
  CertifiedReal(const QuadraticNumber& exact) : v_(exact) {}
  CertifiedReal(const Rational& exact) : v_(QuadraticNumber(exact)) {}
  static CertifiedReal enclosure(const Rational& lo, const Rational& hi);

  bool is_exact() const { return std::holds_alternative<QuadraticNumber>(v_); }
  bool is_rational() const;
  const QuadraticNumber& exact() const;
  Rational lower() const;
  Rational upper() const;

  int sign() const;
  Integer floor() const;
  Integer nearest_int() const;
  CertifiedReal abs() const;
  long double to_long_double() const;
  // Exact fraction when rational, otherwise "<decimal>±<bound>".
  std::string str(int digits = 30) const;

  friend CertifiedReal operator+(const CertifiedReal& x, const CertifiedReal& y);
  friend CertifiedReal operator-(const CertifiedReal& x, const CertifiedReal& y);
  friend CertifiedReal operator*(const CertifiedReal& x, const CertifiedReal& y);
  CertifiedReal operator-() const;

 private:
  struct Interval {
    Rational lo, hi;
  };
  Interval bounds() const;
  std::variant<QuadraticNumber, Interval> v_;
};

int compare(const CertifiedReal& x, const CertifiedReal& y);
CertifiedReal fractional_norm(const CertifiedReal& x);

struct ContinuedFraction {
  std::vector<Integer> quotients;
  bool terminated = false;  // the value is rational and fully expanded
  bool exhausted = false;   // decimal precision ran out before max_count
};

// Slope w in [0,1]: rational, quadratic irrational, or a decimal with a
// stated number of certified digits.
class SlopeValue {
 public:
  enum class Kind { rational, quadratic, decimal };

  static SlopeValue from_rational(const Rational& w);
  static SlopeValue from_quadratic(const QuadraticNumber& w);
  // (p + s*sqrt(d))/q.
  static SlopeValue from_quadratic(const Integer& p, const Integer& s, const Integer& d, const Integer& q);
  static SlopeValue from_decimal(std::string_view digits, int certified_digits);
  // [head; period, period, ...]; an empty period gives a rational.
  static SlopeValue from_continued_fraction(const std::vector<Integer>& head, const std::vector<Integer>& period);
  // rat:p/q, quad:(p+s*sqrt(d))/q, dec:0.4142...@N, cf:[0;1,2,(1)].
  static SlopeValue parse(std::string_view text);

  Kind kind() const { return kind_; }
  // Canonical text in the input grammar; parse(str()) reproduces the value.
  std::string str() const;
  CertifiedReal value() const;
  CertifiedReal times(const Integer& m) const;
  bool is_rational() const { return kind_ == Kind::rational; }
  const QuadraticNumber& exact() const;
  int certified_digits() const { return certified_digits_; }
  ContinuedFraction partial_quotients(std::size_t max_count) const;

 private:
  SlopeValue() = default;
  Kind kind_ = Kind::rational;
  QuadraticNumber exact_;
  Rational lo_, hi_;
  std::string digits_;
  int certified_digits_ = 0;
};

struct Convergent {
  Integer a;
  Integer q;
  Integer partial_quotient;
  // -log|w - a/q| / log q; +inf when w = a/q or q = 1.
  long double beta = 0;
};

struct ConvergentSeq {
  std::vector<Convergent> entries;
  bool terminated = false;
};

// First `count` convergents with strictly increasing denominators.
ConvergentSeq convergents(const SlopeValue& w, std::size_t count);
// All convergents with q <= q_max, followed by the first one beyond it when
// the expansion continues.
ConvergentSeq convergents_up_to(const SlopeValue& w, const Integer& q_max);

long double convergent_beta(const SlopeValue& w, const Integer& a, const Integer& q);

struct DeltaResult {
  CertifiedReal value;
  Integer argmin_q;
  Integer q_cap;
};

// min over 1 <= q <= q_cap of q*x + ||q*w||, with the certificate that no
// q beyond the cap does better. Default cap: ceil(1/x) + 1.
DeltaResult delta(const SlopeValue& w, const Rational& x, std::optional<Integer> q_cap = std::nullopt);

}  // namespace flatarc
