#include <algorithm>
#include <cmath>

#include "flatarc/exact_arith.hpp"

namespace flatarc {

namespace {

constexpr unsigned kEncloseBits = 256;

int digits_to_separate(const Rational& lo, const Rational& hi) {
  long double width = (hi - lo).to_long_double();
  long double mid = std::fabs(((lo + hi) / Rational(2)).to_long_double());
  if (width <= 0) return 1;
  if (mid == 0) return std::max(1, static_cast<int>(std::ceil(-std::log10(width))));
  return std::max(1, static_cast<int>(std::ceil(std::log10(width / mid))) + 1);
}

[[noreturn]] void undecided(const std::string& what, const Rational& lo, const Rational& hi) {
  int extra = digits_to_separate(lo, hi);
  throw PrecisionExhausted(what + " not decidable at the stated precision; about " + std::to_string(extra) +
                               " more certified digits needed",
                           extra);
}

Integer pow10(unsigned e) {
  Integer r, ten = 10;
  mpz_pow_ui(r.get_mpz_t(), ten.get_mpz_t(), e);
  return r;
}

// Fixed-point decimal of floor(x * 10^digits) / 10^digits.
std::string decimal_floor(const Rational& x, int digits) {
  Integer scaled = (x * Rational(pow10(static_cast<unsigned>(digits)))).floor();
  bool neg = scaled < 0;
  std::string s = (neg ? Integer(-scaled) : scaled).get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (neg ? "-" : "") + s;
}

}  // namespace

CertifiedReal CertifiedReal::enclosure(const Rational& lo, const Rational& hi) {
  require(lo <= hi, "empty enclosure");
  CertifiedReal r;
  if (lo == hi) {
    r.v_ = QuadraticNumber(lo);
  } else {
    r.v_ = Interval{lo, hi};
  }
  return r;
}

bool CertifiedReal::is_rational() const { return is_exact() && exact().is_rational(); }

const QuadraticNumber& CertifiedReal::exact() const {
  require(is_exact(), "value is only known through an enclosure");
  return std::get<QuadraticNumber>(v_);
}

CertifiedReal::Interval CertifiedReal::bounds() const {
  if (const auto* q = std::get_if<QuadraticNumber>(&v_)) {
    auto [lo, hi] = q->enclose(kEncloseBits);
    return {lo, hi};
  }
  return std::get<Interval>(v_);
}

Rational CertifiedReal::lower() const { return bounds().lo; }
Rational CertifiedReal::upper() const { return bounds().hi; }

int CertifiedReal::sign() const {
  if (is_exact()) return exact().sign();
  const auto& iv = std::get<Interval>(v_);
  if (iv.lo.sign() > 0) return 1;
  if (iv.hi.sign() < 0) return -1;
  undecided("sign", iv.lo, iv.hi);
}

Integer CertifiedReal::floor() const {
  if (is_exact()) return exact().floor();
  const auto& iv = std::get<Interval>(v_);
  Integer f = iv.lo.floor();
  if (iv.hi.floor() != f) undecided("floor", iv.lo, iv.hi);
  return f;
}

Integer CertifiedReal::nearest_int() const {
  // [x] = ceil(x - 1/2) = -floor(1/2 - x).
  CertifiedReal t = CertifiedReal(Rational(1, 2)) - *this;
  return -t.floor();
}

CertifiedReal CertifiedReal::abs() const {
  if (is_exact()) return CertifiedReal(exact().abs());
  const auto& iv = std::get<Interval>(v_);
  if (iv.lo.sign() >= 0) return *this;
  if (iv.hi.sign() <= 0) return enclosure(-iv.hi, -iv.lo);
  return enclosure(Rational(0), max(-iv.lo, iv.hi));
}

long double CertifiedReal::to_long_double() const {
  if (is_exact()) return exact().to_long_double();
  const auto& iv = std::get<Interval>(v_);
  return ((iv.lo + iv.hi) / Rational(2)).to_long_double();
}

std::string CertifiedReal::str(int digits) const {
  if (is_rational()) return exact().as_rational().str();
  digits = std::max(digits, 1);
  if (is_exact()) {
    auto [lo, hi] = exact().enclose(static_cast<unsigned>(4 * digits + 8));
    return decimal_floor(lo, digits) + "±1e-" + std::to_string(digits);
  }
  const auto& iv = std::get<Interval>(v_);
  Rational mid = (iv.lo + iv.hi) / Rational(2);
  Rational half = (iv.hi - iv.lo) / Rational(2);
  // Error bound: half-width plus the truncation of the printed midpoint.
  Rational bound = half + Rational(1, pow10(static_cast<unsigned>(digits)));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3Le", bound.to_long_double() * (1 + 1e-9L));
  return decimal_floor(mid, digits) + "±" + buf;
}

CertifiedReal operator+(const CertifiedReal& x, const CertifiedReal& y) {
  if (x.is_exact() && y.is_exact()) return CertifiedReal(x.exact() + y.exact());
  auto a = x.bounds(), b = y.bounds();
  return CertifiedReal::enclosure(a.lo + b.lo, a.hi + b.hi);
}

CertifiedReal operator-(const CertifiedReal& x, const CertifiedReal& y) { return x + (-y); }

CertifiedReal operator*(const CertifiedReal& x, const CertifiedReal& y) {
  if (x.is_exact() && y.is_exact()) return CertifiedReal(x.exact() * y.exact());
  auto a = x.bounds(), b = y.bounds();
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rational lo = p[0], hi = p[0];
  for (const auto& v : p) {
    lo = min(lo, v);
    hi = max(hi, v);
  }
  return CertifiedReal::enclosure(lo, hi);
}

CertifiedReal CertifiedReal::operator-() const {
  if (is_exact()) return CertifiedReal(-exact());
  const auto& iv = std::get<Interval>(v_);
  return enclosure(-iv.hi, -iv.lo);
}

int compare(const CertifiedReal& x, const CertifiedReal& y) { return (x - y).sign(); }

CertifiedReal fractional_norm(const CertifiedReal& x) {
  return (x - CertifiedReal(Rational(x.nearest_int()))).abs();
}

}  // namespace flatarc
