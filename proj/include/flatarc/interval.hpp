#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace flatarc {

// Closed interval of long doubles with outward rounding. Each operation
// rounds to nearest and then widens by one ulp on each side, which is enough
// since round-to-nearest errs by at most half an ulp.
class Interval {
 public:
  Interval() = default;
  Interval(long double v) : lo_(v), hi_(v) {}  // NOLINT: exact points convert implicitly
  Interval(long double lo, long double hi) : lo_(lo), hi_(hi) {}

  long double lo() const { return lo_; }
  long double hi() const { return hi_; }
  long double mid() const { return lo_ / 2 + hi_ / 2; }
  long double width() const { return hi_ - lo_; }
  bool contains(long double v) const { return lo_ <= v && v <= hi_; }

  friend Interval operator+(const Interval& x, const Interval& y) { return widen(x.lo_ + y.lo_, x.hi_ + y.hi_); }
  friend Interval operator-(const Interval& x, const Interval& y) { return widen(x.lo_ - y.hi_, x.hi_ - y.lo_); }
  friend Interval operator-(const Interval& x) { return {-x.hi_, -x.lo_}; }
  friend Interval operator*(const Interval& x, const Interval& y) {
    long double a = x.lo_ * y.lo_, b = x.lo_ * y.hi_, c = x.hi_ * y.lo_, d = x.hi_ * y.hi_;
    return widen(std::min({a, b, c, d}), std::max({a, b, c, d}));
  }
  // Divisor must not contain zero.
  friend Interval operator/(const Interval& x, const Interval& y) {
    long double a = x.lo_ / y.lo_, b = x.lo_ / y.hi_, c = x.hi_ / y.lo_, d = x.hi_ / y.hi_;
    return widen(std::min({a, b, c, d}), std::max({a, b, c, d}));
  }

  friend Interval sqrt(const Interval& x) {
    return widen(std::sqrt(std::max(x.lo_, 0.0L)), std::sqrt(std::max(x.hi_, 0.0L)));
  }
  friend Interval square(const Interval& x) {
    long double a = x.lo_ * x.lo_, b = x.hi_ * x.hi_;
    if (x.lo_ <= 0 && x.hi_ >= 0) return widen(0, std::max(a, b));
    return widen(std::min(a, b), std::max(a, b));
  }
  friend Interval hull(const Interval& x, const Interval& y) {
    return {std::min(x.lo_, y.lo_), std::max(x.hi_, y.hi_)};
  }
  // Adds +-e to both ends (for model errors outside the computed formula).
  Interval inflate(long double e) const { return widen(lo_ - e, hi_ + e); }

 private:
  static Interval widen(long double lo, long double hi) {
    constexpr long double inf = std::numeric_limits<long double>::infinity();
    return {std::nextafter(lo, -inf), std::nextafter(hi, inf)};
  }
  long double lo_ = 0, hi_ = 0;
};

}  // namespace flatarc
