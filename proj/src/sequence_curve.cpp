#include <algorithm>
#include <cmath>

#include "build_util.hpp"

namespace flatarc {

using namespace detail;

Integer mod_inverse(const Integer& a, const Integer& q) {
  require(q >= 1, "modulus must be positive");
  if (q == 1) return Integer(1);
  Integer inv;
  require(mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t()) != 0, "a is not invertible mod q");
  if (inv <= 0) inv += q;
  return inv;
}

namespace {

struct Sequence {
  Integer a, q, abar, Omega, G, N;
  int side = 1;  // +1: points on y = (a/q) x + j/q, -1: on y = (a/q) x - j/q
  std::vector<Integer> dx, dy;
  std::size_t m = 0;  // designated points P_1..P_m
  Rational first_tangent, first_chord;
  long double ratio_lo = INFINITY, ratio_hi = -INFINITY;
  long double window_lo = INFINITY, window_hi = -INFINITY;
  PiecewiseCurve curve;
  Envelope env;
};

long double cbrt_ld(long double x) { return std::cbrt(x); }

void common_hypotheses(const ConstructionSpec& spec, const Integer& q) {
  const Constants& c = spec.constants;
  long double r3 = cbrt_ld(spec.r);
  require(spec.ell > 1 && spec.r > 1, "need ell > 1 and r > 1");
  require_hypothesis(spec.ell > c.rat_ell * r3, "ell > rat_ell r^(1/3)");
  require_hypothesis(spec.ell < r3 * r3, "ell < r^(2/3)");
  require_hypothesis(ld(q) < c.K4 * r3 * r3 / spec.ell, "q < K4 r^(2/3)/ell");
}

// Fills G, N and the steps, then builds the curve through P_1..P_m. m = 0
// keeps N - 1 points.
void build_sequence(const ConstructionSpec& spec, Sequence& s, std::size_t m) {
  const Constants& c = spec.constants;
  Rational r = exact(spec.r);
  s.abar = mod_inverse(s.a, s.q);
  require_hypothesis(Rational(s.Omega) > exact(c.omega_min) * Rational(s.q), "Omega > omega_min q");
  Rational cube = Rational(Integer(s.Omega * s.Omega * s.Omega)) / r;
  require_hypothesis(cube >= Rational(1), "Omega^3/r >= 1");
  s.G = nearest_int(cube);
  s.N = nearest_int(r / (exact(c.k) * Rational(Integer(s.q * s.Omega * s.Omega))));
  require_hypothesis(s.N >= 3, "N = [r/(k q Omega^2)] >= 3 (N = " + fmt(s.N) + ")");
  if (m == 0) m = s.N.get_ui() - 1;
  require_hypothesis(Integer(static_cast<unsigned long>(m + 1)) <= s.N, "kept points M <= N - 1");
  require_hypothesis(m >= 2, "at least two kept points");
  s.m = m;
  Integer shift = s.side > 0 ? -s.abar : Integer(s.abar % s.q);
  for (std::size_t j = 1; j <= m + 1; ++j) {
    Integer step = s.q * s.G * static_cast<unsigned long>(j - 1);
    Integer dx = s.Omega + shift;
    dx += s.side > 0 ? Integer(-step) : step;
    require_hypothesis(dx > 0, "Delta x_j > 0");
    Integer num = s.a * dx + s.side;
    require(mpz_divisible_p(num.get_mpz_t(), s.q.get_mpz_t()) != 0, "internal: Delta y_j not integral");
    s.dx.push_back(dx);
    s.dy.push_back(num / s.q);
  }
  Integer X = 0, Y = 0;
  for (std::size_t j = 0; j <= m; ++j) {
    X += s.dx[j];
    Y += s.dy[j];
  }
  require(abs(X) < Integer(1) << 62 && abs(Y) < Integer(1) << 62, "sequence coordinates exceed 2^62");
  auto tangent = [&](std::size_t j) {  // at P_j, 1 <= j <= m
    return Rational(s.dy[j - 1] + s.dy[j], s.dx[j - 1] + s.dx[j]);
  };
  s.first_tangent = tangent(1);
  s.first_chord = Rational(s.dy[0], s.dx[0]);
  Integer x = s.dx[0], y = s.dy[0];
  long double R = spec.r;
  for (std::size_t j = 1; j < m; ++j) {
    Point A{ld(x), ld(y)};
    x += s.dx[j];
    y += s.dy[j];
    Point B{ld(x), ld(y)};
    Rational chord(s.dy[j], s.dx[j]);
    long double alpha = local_tan(tangent(j), chord), beta = local_tan(tangent(j + 1), chord);
    long double L = std::hypot(B.x - A.x, B.y - A.y);
    s.ratio_lo = std::min(s.ratio_lo, alpha / beta);
    s.ratio_hi = std::max(s.ratio_hi, alpha / beta);
    s.window_lo = std::min(s.window_lo, L / (beta * spec.r));
    s.window_hi = std::max(s.window_hi, L / (beta * spec.r));
    s.curve.append(join_with_radii(A, B, alpha, beta, R, R, spec.r, true, true, s.env));
  }
}

void record(ConstructionResult& res, const Sequence& s) {
  res.params["a"] = fmt(s.a);
  res.params["q"] = fmt(s.q);
  res.params["abar"] = fmt(s.abar);
  res.params["Omega"] = fmt(s.Omega);
  res.params["G"] = fmt(s.G);
  res.params["N"] = fmt(s.N);
  res.params["points"] = std::to_string(s.m);
  res.params["side"] = s.side > 0 ? "above" : "below";
}

// Checks shared by both rational builders.
void sequence_checks(ConstructionResult& res, const ConstructionSpec& spec, const Sequence& s) {
  const Constants& c = spec.constants;
  // Each designated point lies on the next line y = (a/q) x +- j/q.
  bool lines = true;
  Integer x = 0, y = 0;
  for (std::size_t j = 0; j < s.m; ++j) {
    x += s.dx[j];
    y += s.dy[j];
    lines = lines && s.q * y - s.a * x == s.side * static_cast<long>(j + 1);
  }
  add_check(res, "rational_lines", lines, 1, 1, lines ? 1 : 0);
  // Omega (1 - 2/omega_min) < Delta x_j < Omega above, the mirror bracket below.
  Integer lo = *std::min_element(s.dx.begin(), s.dx.end()), hi = *std::max_element(s.dx.begin(), s.dx.end());
  Rational O(s.Omega), eps = Rational(2) / exact(c.omega_min);
  bool lo_ok = s.side > 0 ? Rational(lo) > O * (Rational(1) - eps) : Rational(lo) >= O;
  bool hi_ok = s.side > 0 ? Rational(hi) < O : Rational(hi) < O * (Rational(1) + eps);
  long double e = ld(eps);
  add_check(res, "delta_x_min", lo_ok, s.side > 0 ? 1 - e : 1, INFINITY, ld(lo) / ld(s.Omega));
  add_check(res, "delta_x_max", hi_ok, -INFINITY, s.side > 0 ? 1 : 1 + e, ld(hi) / ld(s.Omega));
  add_claim(res, "junction_ratio_min", "check", -3, INFINITY, s.ratio_lo);
  add_claim(res, "junction_ratio_max", "check", -INFINITY, -1.0L / 3, s.ratio_hi);
  add_claim(res, "chord_window_min", "paper", 1.0L / 3, INFINITY, s.window_lo);
  add_claim(res, "chord_window_max", "paper", 0, 9, s.window_hi);
  add_claim(res, "curvature_paper_min", "paper", spec.r / 16, INFINITY, res.summary.rad_min);
  add_claim(res, "curvature_paper_max", "paper", 0, 16 * spec.r, res.summary.rad_max);
}

void finish(ConstructionResult& res, const ConstructionSpec& spec, Sequence& s, long double count_bound) {
  res.profile = spec.constants.name;
  record(res, s);
  res.curve = s.curve;
  int cmp = compare_slope(spec.w, s.first_tangent);
  StartFix fix = fix_initial_slope(res.curve, spec.w, cmp, s.env);
  res.params["start"] = fix.extended ? "arc" : (fix.trimmed ? "trimmed" : "exact");
  measure(res, spec.w.value().to_long_double(), s.env);
  add_claim(res, "length", "claim", 0, spec.ell, res.summary.length + res.summary.length_err);
  add_claim(res, "lattice_count", "claim", count_bound, INFINITY, static_cast<long double>(res.count.certified));
  add_check(res, "designated_points", res.count.certified == s.m - fix.deleted, static_cast<long double>(s.m),
            static_cast<long double>(s.m), static_cast<long double>(res.count.certified));
  sequence_checks(res, spec, s);
  long double gap = std::fabs(ld(s.first_tangent) - spec.w.value().to_long_double());
  add_claim(res, "tangent_gap_paper", "paper", 0, spec.ell / (20 * spec.r), gap);
  add_claim(res, "arc_angle_paper", "paper", 0, spec.ell / (20 * spec.r), fix.arc_angle);
  add_claim(res, "arc_radius_paper", "paper", 0, 16 * spec.r, fix.arc_radius);
}

}  // namespace

ConstructionResult build_rational_curve_very_near(const ConstructionSpec& spec) {
  ConstructionResult res;
  res.regime = regime_name(Regime::very_near);
  auto [a, q] = rational_pair(spec, res);
  common_hypotheses(spec, q);
  const Constants& c = spec.constants;
  CertifiedReal d = spec.w.value() - CertifiedReal(Rational(a, q));
  Rational limit = exact(spec.ell) / (exact(c.very_near_div) * exact(spec.r));
  require_hypothesis(compare(d.abs(), CertifiedReal(limit)) <= 0, "|w - a/q| <= ell/(very_near_div r)");
  Sequence s;
  s.a = a;
  s.q = q;
  s.side = 1;
  Integer omega_k = q * nearest_int(exact(c.k) * exact(spec.r) / (Rational(Integer(q * q)) * exact(spec.ell)));
  s.Omega = omega_k;
  res.params["Omega_k"] = fmt(omega_k);
  if (d.sign() > 0) {
    // Keep 1/(q Omega) >= w - a/q so the first tangent stays above w.
    Integer omega_w = q * inverse((spec.w.times(q) - CertifiedReal(Rational(a))) * CertifiedReal(Rational(q))).floor();
    res.params["Omega_w"] = fmt(omega_w);
    if (omega_w < omega_k) {
      s.Omega = omega_w;
      res.rationale.push_back("Omega lowered to q floor(1/(q(qw - a))) so that w stays below the first tangent");
    }
  }
  build_sequence(spec, s, 0);
  long double bound = 0.25L + 0.25L * c.count_factor() * ld(q) * spec.ell * spec.ell / spec.r;
  finish(res, spec, s, bound);
  return res;
}

ConstructionResult build_rational_curve_near(const ConstructionSpec& spec) {
  ConstructionResult res;
  res.regime = regime_name(Regime::near);
  auto [a, q] = rational_pair(spec, res);
  common_hypotheses(spec, q);
  const Constants& c = spec.constants;
  CertifiedReal qd = spec.w.times(q) - CertifiedReal(Rational(a));  // q w - a
  CertifiedReal d = qd * CertifiedReal(Rational(1, q));
  Rational limit = exact(spec.ell) / (exact(c.very_near_div) * exact(spec.r));
  require_hypothesis(compare(d.abs(), CertifiedReal(limit)) > 0, "|w - a/q| > ell/(very_near_div r)");
  // |w - a/q| <= 1/(q r^(1/3)) iff |qw - a|^3 r <= 1.
  CertifiedReal cube = qd.abs() * qd.abs() * qd.abs() * CertifiedReal(exact(spec.r));
  require_hypothesis(compare(cube, CertifiedReal(Rational(1))) <= 0, "|w - a/q| <= 1/(q r^(1/3))");
  Sequence s;
  s.a = a;
  s.q = q;
  s.side = qd.sign() > 0 ? 1 : -1;
  CertifiedReal inv = inverse(qd.abs() * CertifiedReal(Rational(q)));
  s.Omega = q * (s.side > 0 ? inv.floor() : ceil(inv));
  Integer kept = (CertifiedReal(Rational(q) * exact(spec.ell) * exact(c.count_factor())) * d.abs()).floor();
  res.params["M"] = fmt(kept);
  require_hypothesis(kept >= 2, "M = floor(q ell |w - a/q|/k^3) >= 2 (M = " + fmt(kept) + ")");
  build_sequence(spec, s, kept.get_ui());
  long double dl = d.abs().to_long_double();
  long double bound = 0.25L + 0.25L * c.count_factor() * ld(q) * spec.ell * dl;
  finish(res, spec, s, bound);
  // Chord from P_0 to P_1 against w: tan theta - w = delta (qw-a)^2/(1 - delta q (qw-a)).
  CertifiedReal gap = CertifiedReal(s.first_chord) - spec.w.value();
  CertifiedReal four = CertifiedReal(Rational(4)) * qd * qd;
  bool pos = s.side > 0 ? gap.sign() > 0 : gap.sign() >= 0;
  add_check(res, "chord_gap", pos && compare(gap, four) < 0, 0, four.to_long_double(), gap.to_long_double());
  CertifiedReal dq = s.side > 0 ? inverse(qd) - CertifiedReal(Rational(s.dx[0]))
                                : CertifiedReal(Rational(s.dx[0])) - inverse(-qd);
  bool dq_ok = (s.side > 0 ? dq.sign() > 0 : dq.sign() >= 0) &&
               compare(dq, CertifiedReal(Rational(2) * Rational(q))) < 0;
  add_check(res, "delta_identity", dq_ok, 0, 2, dq.to_long_double() / ld(q));
  add_claim(res, "kept_vs_N", "check", 0, ld(s.N), ld(kept));
  add_claim(res, "feasibility_paper", "paper", 16 * spec.ell / (c.k * c.k * spec.r), INFINITY, dl);
  return res;
}

}  // namespace flatarc
