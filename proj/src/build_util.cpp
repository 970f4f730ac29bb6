#include "build_util.hpp"

#include <algorithm>
#include <cfloat>
#include <cstdio>

namespace flatarc {

const Claim& ConstructionResult::claim(const std::string& name) const {
  for (const auto& c : claims)
    if (c.name == name) return c;
  throw InvalidInput("no claim named '" + name + "'");
}

bool ConstructionResult::satisfied() const {
  for (const auto& c : claims)
    if (c.kind != "paper" && !c.satisfied) return false;
  return true;
}

namespace detail {

void Envelope::add(const ProfileParams& p) {
  lo = std::min(lo, p.rho / 250);
  hi = std::max(hi, 300 * std::max(p.rho1, p.rho2));
}

void Envelope::add_radius(long double R) {
  lo = std::min(lo, R);
  hi = std::max(hi, R);
}

SplineSegment join_with_radii(Point A, Point B, long double alpha, long double beta, long double R_A,
                              long double R_B, long double rho_pref, bool lattice_A, bool lattice_B,
                              Envelope& env) {
  long double L = std::hypot(B.x - A.x, B.y - A.y);
  long double rho1 = R_A / std::pow(1 + alpha * alpha, 1.5L);
  long double rho2 = R_B / std::pow(1 + beta * beta, 1.5L);
  long double cap = std::min(rho1, rho2);
  require_hypothesis(beta > 0, "beta > 0 at a junction");
  long double lo = L / (9 * beta), hi = 3 * L / beta;
  require_hypothesis(lo <= cap, "|AB| <= 9 beta min(rho1, rho2) at a junction");
  long double rho = std::min(rho_pref, cap);
  rho = std::clamp(rho, lo, std::min(hi, cap));
  SplineSegment s = join_local(A, B, alpha, beta, rho, rho1, rho2, lattice_A, lattice_B);
  env.add(s.profile().params());
  return s;
}

long double local_tan(const Rational& t, const Rational& s) { return ((t - s) / (Rational(1) + t * s)).to_long_double(); }

StartFix fix_initial_slope(PiecewiseCurve& c, const SlopeValue& w, int cmp, Envelope& env) {
  StartFix out;
  if (cmp == 0 || c.empty()) return out;
  long double tw = std::atan(w.value().to_long_double());
  const auto& segs = c.segments();
  if (cmp < 0) {
    const Segment& first = segs.front();
    long double t1 = first.angle(0);
    if (!(tw < t1)) return out;  // the two slopes round to the same angle
    long double R = first.rad(0);
    PiecewiseCurve next;
    next.append(ArcSegment(first.start(), t1, tw, t1, R, false));
    for (const auto& s : segs) next.append(s);
    c = next;
    out.extended = true;
    out.arc_angle = t1 - tw;
    out.arc_radius = R;
    out.arc_length = R * (t1 - tw);
    env.add_radius(R);
    return out;
  }
  std::size_t before = c.designated().size();
  std::size_t k = 0;
  while (k < segs.size() && !(segs[k].angle(1) > tw)) ++k;
  require_hypothesis(k < segs.size(), "w below the final tangent slope of the curve");
  require(segs[k].is_spline(), "trimming needs a spline segment");
  const SplineSegment& sp = segs[k].spline();
  long double lo = sp.s0(), hi = sp.s1();
  if (sp.angle_at(lo) < tw) {
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
      long double mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      (sp.angle_at(mid) < tw ? lo : hi) = mid;
    }
  } else {
    hi = lo;
  }
  PiecewiseCurve next;
  next.append(hi > sp.s0() ? sp.trimmed(hi, sp.s1()) : sp);
  for (std::size_t i = k + 1; i < segs.size(); ++i) next.append(segs[i]);
  c = next;
  out.trimmed = true;
  out.deleted = before - c.designated().size();
  return out;
}

void add_claim(ConstructionResult& res, const std::string& name, const std::string& kind, long double lo,
               long double hi, long double measured) {
  res.claims.push_back({name, kind, lo, hi, measured, lo <= measured && measured <= hi});
}

void add_check(ConstructionResult& res, const std::string& name, bool ok, long double lo, long double hi,
               long double measured) {
  res.claims.push_back({name, "check", lo, hi, measured, ok});
}

void measure(ConstructionResult& res, long double w, const Envelope& env) {
  res.summary = curve_summary(res.curve);
  res.count = count_lattice_points(res.curve);
  const auto& s = res.summary;
  add_claim(res, "initial_slope", "claim", w - kSlopeTol, w + kSlopeTol, s.w);
  add_claim(res, "curvature_min", "claim", env.lo, INFINITY, s.rad_min);
  add_claim(res, "curvature_max", "claim", 0, env.hi, s.rad_max);
  add_check(res, "strictly_convex", s.strictly_convex, 1, 1, s.strictly_convex ? 1 : 0);
}

std::string fmt(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

std::string fmt(const Integer& v) { return to_string(v); }

Rational exact(long double v) { return Rational::from_long_double(v); }
long double ld(const Rational& v) { return v.to_long_double(); }
long double ld(const Integer& v) { return to_long_double(v); }

int compare_slope(const SlopeValue& w, const Rational& t) { return compare(w.value(), CertifiedReal(t)); }

CertifiedReal inverse(const CertifiedReal& t) {
  require_hypothesis(t.sign() > 0, "positive argument of an inverse");
  if (t.is_exact()) return CertifiedReal(QuadraticNumber(1) / t.exact());
  return CertifiedReal::enclosure(Rational(1) / t.upper(), Rational(1) / t.lower());
}

Integer ceil(const CertifiedReal& t) { return -(-t).floor(); }

std::pair<Integer, Integer> rational_pair(const ConstructionSpec& spec, ConstructionResult& res) {
  Integer a, q;
  if (spec.q) {
    q = *spec.q;
    a = spec.a ? *spec.a : spec.w.times(q).nearest_int();
    res.rationale.push_back("a/q = " + fmt(a) + "/" + fmt(q) + " given");
  } else {
    DeltaResult d = delta(spec.w, exact(spec.ell) / exact(spec.r));
    q = d.argmin_q;
    a = spec.w.times(q).nearest_int();
    res.rationale.push_back("a/q = " + fmt(a) + "/" + fmt(q) + " minimizes delta(w, ell/r) = " + d.value.str(12));
  }
  require(q >= 1 && a >= 0, "need q >= 1 and a >= 0");
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  require_hypothesis(g == 1, "gcd(a, q) = 1");
  return {a, q};
}

}  // namespace detail
}  // namespace flatarc
