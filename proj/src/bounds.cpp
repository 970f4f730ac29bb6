#include "flatarc/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace flatarc {

namespace {

Rational exact_ld(long double v) { return Rational::from_long_double(v); }

void require_coprime(const Integer& a, const Integer& q) {
  require(q >= 1 && a >= 0, "need q >= 1 and a >= 0");
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  require(g == 1, "need gcd(a, q) = 1");
}

void geometric_window(long double ell, long double r) {
  require_hypothesis(ell > 3, "ell > 3");
  require_hypothesis(ell <= r / 3, "ell <= r/3");
}

}  // namespace

long double local_upper_bound(long double ell, long double r) {
  require(ell >= 1 && r >= 1, "local bound needs ell, r >= 1");
  return 2 * ell / std::cbrt(r) + 2;
}

long double geometric_upper_bound(const SlopeValue& w, long double ell, long double r, const Integer& a,
                                  const Integer& q) {
  require_coprime(a, q);
  geometric_window(ell, r);
  // Upper end of the enclosure so the bound never rounds down.
  long double d = (w.value() - CertifiedReal(Rational(a, q))).abs().upper().to_long_double();
  long double ql = to_long_double(q);
  return 2.04L * ql * ell * d + 3.2L * ql * ell * ell / r + 2;
}

GeometricBound best_geometric_bound(const SlopeValue& w, long double ell, long double r) {
  geometric_window(ell, r);
  DeltaResult d = delta(w, exact_ld(ell) / exact_ld(r));
  GeometricBound out;
  out.q = d.argmin_q;
  out.a = w.times(out.q).nearest_int();
  out.value = geometric_upper_bound(w, ell, r, out.a, out.q);
  return out;
}

long double Parallelogram::slope() const { return (Rational(a, q)).to_long_double(); }

bool Parallelogram::contains(Point p, long double slack) const {
  if (p.x < u - slack || p.x > u + k + slack) return false;
  long double base = v + slope() * (p.x - u);
  return p.y >= base - slack && p.y <= base + h + slack;
}

Parallelogram bounding_parallelogram(const PiecewiseCurve& c, const Integer& a, const Integer& q,
                                     std::optional<long double> ell, std::optional<long double> r) {
  require_coprime(a, q);
  require(!c.empty(), "empty curve");
  CurveSummary s = curve_summary(c);
  long double L = ell ? *ell : s.length + s.length_err;
  long double R = r ? *r : s.rad_min;
  geometric_window(L, R);
  Point A = c.segments().front().start();
  Parallelogram p;
  p.a = a;
  p.q = q;
  p.k = 1.02L * L;
  // The curve lies between its tangent at A and that line raised by
  // 1.6 ell^2/r over x in [x_A, x_A + 1.02 ell]; widen to sides of slope a/q.
  long double H = 1.6L * L * L / R;
  long double drift = (s.w - p.slope()) * p.k;
  p.u = A.x;
  p.v = A.y + std::min(0.0L, drift);
  p.h = H + std::fabs(drift);
  long double scale = std::max({1.0L, std::fabs(A.x) + p.k, std::fabs(A.y) + p.k});
  long double slack = 1e-12L * scale;
  for (const auto& seg : c.segments())
    for (int i = 0; i <= 256; ++i) {
      Point pt = seg.point(i / 256.0L);
      if (!p.contains(pt, slack))
        throw Error("internal: curve point (" + std::to_string(static_cast<double>(pt.x)) + ", " +
                    std::to_string(static_cast<double>(pt.y)) + ") outside the bounding parallelogram");
    }
  return p;
}

std::int64_t lines_through_parallelogram(const Parallelogram& p, const Integer& a, const Integer& q) {
  require_coprime(a, q);
  require(p.h > 0, "parallelogram needs h > 0");
  Rational u = exact_ld(p.u), v = exact_ld(p.v), h = exact_ld(p.h);
  Rational lo = v * Rational(q) - Rational(a) * u;
  Rational hi = (v + h) * Rational(q) - Rational(a) * u;
  Integer n = hi.floor() - lo.ceil() + 1;
  return n < 0 ? 0 : n.get_si();
}

std::string branch_name(Branch b) {
  return b == Branch::curvature_limited ? "curvature-limited" : "diophantine-limited";
}

BoundReport bound_report(const SlopeValue& w, long double ell, long double r, std::optional<std::int64_t> measured) {
  BoundReport rep;
  rep.w = w.str();
  rep.ell = ell;
  rep.r = r;
  rep.local_bound = local_upper_bound(ell, r);
  long double best = std::min(rep.local_bound, ell + 1);
  if (ell > 3 && ell <= r / 3) {
    rep.geometric = best_geometric_bound(w, ell, r);
    best = std::min(best, rep.geometric->value);
  }
  Estimate e = estimator(w, ell, r);
  rep.estimator = e.value;
  rep.branch = e.branch;
  rep.measured = measured;
  if (measured) {
    auto n = static_cast<long double>(*measured);
    rep.tight_ratio = n / best;
    rep.consistent = n <= std::floor(rep.local_bound) && n <= std::floor(ell + 1) &&
                     (!rep.geometric || n <= std::floor(rep.geometric->value));
  }
  return rep;
}

BoundReport verify_curve(const PiecewiseCurve& c, const SlopeValue& w) {
  CurveSummary s = curve_summary(c);
  LatticeCount n = count_lattice_points(c);
  long double ell = std::max(1.0L, s.length + s.length_err);
  long double r = std::max(1.0L, s.rad_min);
  BoundReport rep = bound_report(w, ell, r, static_cast<std::int64_t>(n.possible));
  rep.ambiguous = n.ambiguous.size();
  return rep;
}

}  // namespace flatarc
