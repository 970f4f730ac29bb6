#include <algorithm>
#include <cmath>

#include "flatarc/bounds.hpp"

namespace flatarc {

namespace {

// x^3 r >= 1, exactly.
bool cube_times_r_at_least_one(const CertifiedReal& x, const Rational& r) {
  return compare(x * x * x * CertifiedReal(r), CertifiedReal(Rational(1))) >= 0;
}

}  // namespace

Estimate estimator(const SlopeValue& w, long double ell, long double r) {
  require(ell >= 1 && r >= 1, "estimator needs ell, r >= 1");
  Rational R = Rational::from_long_double(r);
  Rational x = Rational::from_long_double(ell) / R;
  DeltaResult d = delta(w, x);
  Estimate e;
  e.delta = d.value;
  e.argmin_q = d.argmin_q;
  e.branch = cube_times_r_at_least_one(d.value, R) ? Branch::curvature_limited : Branch::diophantine_limited;
  long double r3 = std::cbrt(r);
  e.value = e.branch == Branch::curvature_limited ? ell / r3 : ell * d.value.to_long_double();

  // Convergent pair q_j <= r^(1/3) < q_(j+1).
  Integer qmax = floor_cbrt(R.floor());
  e.q_j = 1;
  for (const auto& cv : convergents_up_to(w, qmax).entries)
    if (cv.q <= qmax) e.q_j = cv.q;
  CertifiedReal sc = fractional_norm(w.times(e.q_j)) + CertifiedReal(x * Rational(e.q_j));
  bool sc_capped = cube_times_r_at_least_one(sc, R);
  e.shortcut = sc_capped ? 1 / r3 : sc.to_long_double();
  // min(r^(-1/3), delta) <= min(r^(-1/3), sc): delta <= sc by definition.
  bool lower = compare(d.value, sc) <= 0;
  bool upper = true;
  if (e.branch == Branch::diophantine_limited) {
    // min(r^(-1/3), sc) <= 10 delta.
    CertifiedReal ten_d = CertifiedReal(Rational(10)) * d.value;
    upper = compare(sc, ten_d) <= 0 || cube_times_r_at_least_one(ten_d, R);
  }
  e.sandwich = lower && upper;
  return e;
}

std::vector<ScanPoint> exponent_scan(const SlopeValue& w, long double alpha, const std::vector<long double>& r_grid) {
  require(alpha > 1.0L / 3 && alpha < 2.0L / 3, "alpha must lie in (1/3, 2/3)");
  std::vector<ScanPoint> out;
  long double hi = -INFINITY, lo = INFINITY;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    long double r = r_grid[i];
    require(r > 1, "scan needs r > 1");
    require(i == 0 || r > r_grid[i - 1], "r grid must be increasing");
    Estimate e = estimator(w, std::pow(r, alpha), r);
    ScanPoint p;
    p.r = r;
    p.exponent = std::log(e.value) / std::log(r);
    p.branch = e.branch;
    hi = std::max(hi, p.exponent);
    lo = std::min(lo, p.exponent);
    p.running_max = hi;
    p.running_min = lo;
    out.push_back(p);
  }
  return out;
}

std::vector<long double> convergent_grid(const SlopeValue& w, long double r_min, long double r_max, int filler) {
  require(r_min > 1 && r_max > r_min, "need 1 < r_min < r_max");
  require(filler >= 0, "filler must be nonnegative");
  std::vector<long double> out;
  Integer qmax = floor_cbrt(Rational::from_long_double(r_max).floor());
  for (const auto& cv : convergents_up_to(w, qmax).entries) {
    long double q = to_long_double(cv.q);
    long double r = q * q * q;
    if (r >= r_min && r <= r_max) out.push_back(r);
  }
  for (int i = 0; i < filler; ++i) {
    long double t = filler == 1 ? 0 : static_cast<long double>(i) / (filler - 1);
    out.push_back(std::exp(std::log(r_min) + t * (std::log(r_max) - std::log(r_min))));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long double limsup_target(long double alpha) { return alpha - 1.0L / 3; }

long double liminf_target(long double alpha, long double beta) {
  long double tail = std::isinf(beta) ? 0 : (1 - alpha) / beta;
  return std::min(alpha - 1.0L / 3, 2 * alpha - 1 + tail);
}

}  // namespace flatarc
