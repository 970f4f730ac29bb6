#include <cmath>

#include "flatarc/exact_arith.hpp"

namespace flatarc {

namespace {

Integer lcm(const Integer& x, const Integer& y) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& n, const Integer& d) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

const Integer& common_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.is_rational()) return y.radicand();
  if (y.is_rational()) return x.radicand();
  if (x.radicand() != y.radicand())
    throw InvalidInput("arithmetic between different quadratic fields");
  return x.radicand();
}

}  // namespace

QuadraticNumber::QuadraticNumber(const Rational& u, const Rational& v, const Integer& d) : u_(u) {
  require(d >= 0, "negative radicand");
  if (v.sign() == 0 || d == 0) return;
  Integer s = floor_sqrt(d);
  if (s * s == d) {
    u_ = u + v * Rational(s);
    return;
  }
  v_ = v;
  d_ = d;
}

Rational QuadraticNumber::as_rational() const {
  require(is_rational(), "value is not rational");
  return u_;
}

int QuadraticNumber::sign() const {
  int su = u_.sign(), sv = v_.sign();
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  Rational uu = u_ * u_, vvd = v_ * v_ * Rational(d_);
  return uu > vvd ? su : sv;
}

Integer QuadraticNumber::floor() const {
  if (is_rational()) return u_.floor();
  Integer L = lcm(u_.den(), v_.den());
  Integer A = u_.num() * (L / u_.den());
  Integer B = v_.num() * (L / v_.den());
  Integer D = B * B * d_;
  Integer s = floor_sqrt(D);
  // sqrt(D) is irrational, so floor(A + sqrt D) = A + s and
  // floor(A - sqrt D) = A - s - 1.
  if (B > 0) return floor_div(A + s, L);
  return floor_div(A - s - 1, L);
}

QuadraticNumber QuadraticNumber::conjugate() const {
  QuadraticNumber r = *this;
  r.v_ = -v_;
  return r;
}

long double QuadraticNumber::to_long_double() const {
  if (is_rational()) return u_.to_long_double();
  long double root = std::sqrt(flatarc::to_long_double(d_));
  long double u = u_.to_long_double();
  long double w = v_.to_long_double() * root;
  if ((u >= 0) == (w >= 0)) return u + w;
  // Opposite signs: use (u^2 - v^2 d)/(u - v sqrt d) to avoid cancellation.
  Rational norm = u_ * u_ - v_ * v_ * Rational(d_);
  return norm.to_long_double() / (u - w);
}

std::pair<Rational, Rational> QuadraticNumber::enclose(unsigned bits) const {
  if (is_rational()) return {u_, u_};
  Integer scale = 1;
  scale <<= bits;
  QuadraticNumber scaled = *this * QuadraticNumber(Rational(scale));
  Integer f = scaled.floor();
  return {Rational(f, scale), Rational(Integer(f + 1), scale)};
}

std::string QuadraticNumber::str() const {
  if (is_rational()) return u_.str();
  return u_.str() + (v_.sign() < 0 ? "-" : "+") + v_.abs().str() + "*sqrt(" + d_.get_str() + ")";
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Integer& d = common_radicand(x, y);
  return QuadraticNumber(x.u_ + y.u_, x.v_ + y.v_, d);
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Integer& d = common_radicand(x, y);
  return QuadraticNumber(x.u_ - y.u_, x.v_ - y.v_, d);
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  const Integer& d = common_radicand(x, y);
  Rational dd(d);
  return QuadraticNumber(x.u_ * y.u_ + x.v_ * y.v_ * dd, x.u_ * y.v_ + x.v_ * y.u_, d);
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  require(y.sign() != 0, "division by zero");
  if (y.is_rational()) return QuadraticNumber(x.u_ / y.u_, x.v_ / y.u_, x.d_);
  Rational norm = y.u_ * y.u_ - y.v_ * y.v_ * Rational(y.d_);
  QuadraticNumber t = x * y.conjugate();
  return QuadraticNumber(t.u_ / norm, t.v_ / norm, t.d_);
}

QuadraticNumber QuadraticNumber::operator-() const {
  QuadraticNumber r = *this;
  r.u_ = -u_;
  r.v_ = -v_;
  return r;
}

int compare(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign(); }

}  // namespace flatarc
