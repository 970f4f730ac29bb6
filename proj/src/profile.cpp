#include <algorithm>
#include <cfloat>
#include <cmath>

#include "flatarc/geometry.hpp"

namespace flatarc {

namespace {

// Slack for hypotheses on long double inputs that come out of rounded
// constructions (for example lambda = 3 computed as 3 + 1 ulp).
constexpr long double kSlack = 1e-12L;

bool le(long double x, long double y) { return x <= y + kSlack * std::max(1.0L, std::fabs(y)); }

}  // namespace

TrigRatio trig_ratio_bounds(long double theta, long double beta_tilde, long double s, long double ds) {
  require_hypothesis(ds >= 0 && ds < 0.5L, "0 <= ds < 1/2");
  require_hypothesis(s >= 0 && le(s + ds, 1), "[s, s+ds] inside [0,1]");
  long double t0 = std::tan(theta), t1 = std::tan(theta + beta_tilde), tb = std::tan(beta_tilde);
  long double slack = 64 * LDBL_EPSILON;
  require_hypothesis(t0 >= s - slack && t0 <= s + ds + slack, "tan(theta) in [s, s+ds]");
  require_hypothesis(t1 >= s - slack && t1 <= s + ds + slack, "tan(theta+beta) in [s, s+ds]");
  require_hypothesis(tb != 0, "beta != 0");
  TrigRatio r;
  r.ratio = (t1 - t0) / ((1 + t0 * t0) * tb);
  r.lo = 1 - ds;
  r.hi = (1 - ds) / (1 - 2 * ds);
  long double tol = 1e-12L;
  if (r.ratio < r.lo - tol || r.ratio > r.hi + tol)
    throw Error("trigonometric ratio " + std::to_string(static_cast<double>(r.ratio)) + " outside its bracket");
  return r;
}

CornerProfile corner_profile(const ProfileParams& p, bool mirrored) {
  const long double L = 0.01L / p.rho, H = 100 / p.rho;
  const long double s1 = mirrored ? H : L, s2 = mirrored ? L : H;
  // 1/(rho s) for the two slopes, kept exact.
  const long double k1 = mirrored ? 0.01L : 100, k2 = mirrored ? 100 : 0.01L;
  CornerProfile c;
  long double d = (p.beta - p.alpha - s2 * (p.b - p.a)) / (s1 - s2);
  c.x1 = p.a + d;
  c.y1 = p.alpha + s1 * d;
  c.integral = (d * (p.alpha + c.y1) + (p.b - c.x1) * (p.beta + c.y1)) / 2;
  long double t = c.y1 / p.beta, lambda = -p.alpha / p.beta;
  c.ratio = k1 * (t * t - lambda * lambda) + k2 * (1 - t * t);
  return c;
}

CurveProfile::CurveProfile(ProfileParams p, std::vector<long double> knots, std::vector<long double> slopes)
    : p_(p), x_(std::move(knots)), g_(std::move(slopes)) {
  require(x_.size() >= 3 && x_.size() == g_.size(), "profile needs at least two pieces");
  require(x_.front() == p_.a && x_.back() == p_.b, "profile knots must span [a, b]");
  for (std::size_t i = 1; i < x_.size(); ++i) require(x_[i] > x_[i - 1], "profile knots must increase");
  const std::size_t n = x_.size() - 1;
  meet_ = n / 2;
  fv_.assign(n + 1, 0);
  Fv_.assign(n + 1, 0);
  fv_[0] = p_.alpha;
  for (std::size_t i = 0; i < meet_; ++i) {
    long double h = x_[i + 1] - x_[i];
    fv_[i + 1] = fv_[i] + h * (g_[i] + g_[i + 1]) / 2;
    Fv_[i + 1] = Fv_[i] + h * fv_[i] + h * h * (2 * g_[i] + g_[i + 1]) / 6;
  }
  long double F_forward = Fv_[meet_];
  fv_[n] = p_.beta;
  Fv_[n] = 0;
  for (std::size_t i = n; i-- > meet_;) {
    long double h = x_[i + 1] - x_[i];
    fv_[i] = fv_[i + 1] - h * (g_[i] + g_[i + 1]) / 2;
    Fv_[i] = Fv_[i + 1] - (h * fv_[i + 1] - h * h * (g_[i] + 2 * g_[i + 1]) / 6);
  }
  closure_ = F_forward - Fv_[meet_];
}

std::size_t CurveProfile::piece(long double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

long double CurveProfile::fprime(long double x) const {
  std::size_t i = piece(x);
  long double h = x_[i + 1] - x_[i];
  // Anchor at the nearer knot so both knot values come back exactly.
  long double t = (x - x_[i]) / h, u = (x_[i + 1] - x) / h;
  long double v = t <= u ? g_[i] + (g_[i + 1] - g_[i]) * t : g_[i + 1] - (g_[i + 1] - g_[i]) * u;
  return std::clamp(v, std::min(g_[i], g_[i + 1]), std::max(g_[i], g_[i + 1]));
}

long double CurveProfile::f(long double x) const {
  std::size_t i = piece(x);
  long double sig = (g_[i + 1] - g_[i]) / (x_[i + 1] - x_[i]);
  if (i < meet_) {
    long double t = x - x_[i];
    return fv_[i] + t * (g_[i] + t * sig / 2);
  }
  long double u = x_[i + 1] - x;
  return fv_[i + 1] - u * (g_[i + 1] - u * sig / 2);
}

long double CurveProfile::F(long double x) const {
  std::size_t i = piece(x);
  long double sig = (g_[i + 1] - g_[i]) / (x_[i + 1] - x_[i]);
  if (i < meet_) {
    long double t = x - x_[i];
    return Fv_[i] + t * (fv_[i] + t * (g_[i] / 2 + t * (sig / 6)));
  }
  long double u = x_[i + 1] - x;
  return Fv_[i + 1] - u * (fv_[i + 1] - u * (g_[i + 1] / 2 - u * (sig / 6)));
}

long double CurveProfile::rad(long double x) const {
  long double s = f(x);
  return std::pow(1 + s * s, 1.5L) / fprime(x);
}

Interval CurveProfile::f_enclosure(Interval x) const {
  std::size_t i0 = piece(x.lo()), i1 = piece(x.hi());
  Interval out;
  for (std::size_t i = i0; i <= i1; ++i) {
    Interval xi(i == i0 ? x.lo() : x_[i], i == i1 ? x.hi() : x_[i + 1]);
    long double sig = (g_[i + 1] - g_[i]) / (x_[i + 1] - x_[i]);
    Interval v;
    if (i < meet_) {
      Interval t = xi - Interval(x_[i]);
      v = Interval(fv_[i]) + t * (Interval(g_[i]) + t * Interval(sig / 2));
    } else {
      Interval u = Interval(x_[i + 1]) - xi;
      v = Interval(fv_[i + 1]) - u * (Interval(g_[i + 1]) - u * Interval(sig / 2));
    }
    out = i == i0 ? v : hull(out, v);
  }
  return out;
}

Interval CurveProfile::F_enclosure(Interval x) const {
  std::size_t i0 = piece(x.lo()), i1 = piece(x.hi());
  Interval out;
  for (std::size_t i = i0; i <= i1; ++i) {
    long double lo = i == i0 ? x.lo() : x_[i];
    long double hi = i == i1 ? x.hi() : x_[i + 1];
    Interval xi(lo, hi);
    long double sig = (g_[i + 1] - g_[i]) / (x_[i + 1] - x_[i]);
    Interval v;
    // sig/2 and sig/6 are rounded exactly as in F(), so these are the same
    // coefficients the point evaluation uses.
    if (i < meet_) {
      Interval t = xi - Interval(x_[i]);
      v = Interval(Fv_[i]) + t * (Interval(fv_[i]) + t * (Interval(g_[i] / 2) + t * Interval(sig / 6)));
    } else {
      Interval u = Interval(x_[i + 1]) - xi;
      v = Interval(Fv_[i + 1]) - u * (Interval(fv_[i + 1]) - u * (Interval(g_[i + 1] / 2) - u * Interval(sig / 6)));
    }
    out = i == i0 ? v : hull(out, v);
  }
  return out;
}

Interval CurveProfile::rad_range() const {
  long double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    Interval fi = f_enclosure(Interval(x_[i], x_[i + 1]));
    long double f2lo = (fi.lo() <= 0 && fi.hi() >= 0) ? 0 : std::min(fi.lo() * fi.lo(), fi.hi() * fi.hi());
    long double f2hi = std::max(fi.lo() * fi.lo(), fi.hi() * fi.hi());
    long double glo = std::min(g_[i], g_[i + 1]), ghi = std::max(g_[i], g_[i + 1]);
    lo = std::min(lo, std::pow(1 + f2lo, 1.5L) / ghi);
    hi = std::max(hi, std::pow(1 + f2hi, 1.5L) / glo);
  }
  return {lo, hi};
}

namespace {

struct Smoothed {
  std::vector<long double> x, g;
};

// Corner profile with slopes s1 then s2, endpoint ramps to 1/rho1, 1/rho2
// and a linear blend of f' across the corner, all of width e. The corner
// position is solved so that f still runs from alpha to beta.
std::optional<Smoothed> smoothed(const ProfileParams& p, bool mirrored, long double e) {
  const long double L = 0.01L / p.rho, H = 100 / p.rho;
  const long double s1 = mirrored ? H : L, s2 = mirrored ? L : H;
  const long double ga = 1 / p.rho1, gb = 1 / p.rho2;
  long double d = (p.beta - p.alpha - s2 * (p.b - p.a) - e * (ga + gb - s1 - s2) / 2) / (s1 - s2);
  if (!(d > 2 * e && p.b - p.a - d > 2 * e)) return std::nullopt;
  long double c = p.a + d;
  Smoothed s;
  s.x = {p.a, p.a + e, c - e, c + e, p.b - e, p.b};
  s.g = {ga, s1, s1, s2, s2, gb};
  for (std::size_t i = 1; i < s.x.size(); ++i)
    if (!(s.x[i] > s.x[i - 1])) return std::nullopt;
  return s;
}

long double eval_linear(const Smoothed& s, long double x) {
  auto it = std::upper_bound(s.x.begin(), s.x.end(), x);
  std::size_t i = it == s.x.begin() ? 0 : static_cast<std::size_t>(it - s.x.begin()) - 1;
  i = std::min(i, s.x.size() - 2);
  long double t = (x - s.x[i]) / (s.x[i + 1] - s.x[i]);
  long double v = s.g[i] + (s.g[i + 1] - s.g[i]) * t;
  return std::clamp(v, std::min(s.g[i], s.g[i + 1]), std::max(s.g[i], s.g[i + 1]));
}

}  // namespace

CurveProfile build_profile(const ProfileParams& p) {
  require_hypothesis(p.rho > 0, "rho > 0");
  require_hypothesis(le(p.rho, std::min(p.rho1, p.rho2)), "rho <= min(rho1, rho2)");
  require_hypothesis(p.beta > 0, "beta > 0");
  require_hypothesis(p.b > p.a, "a < b");
  long double lambda = -p.alpha / p.beta;
  require_hypothesis(le(1.0L / 3, lambda) && le(lambda, 3), "alpha = -lambda beta with lambda in [1/3, 3]");
  long double span = p.b - p.a, br = p.beta * p.rho;
  require_hypothesis(le(br / 3, span) && le(span, 9 * br), "(1/3) beta rho <= b - a <= 9 beta rho");

  CornerProfile c1 = corner_profile(p, false), c2 = corner_profile(p, true);
  // Both corner integrals have the expected sign under the hypotheses; a
  // failure here means the hypothesis slack let something through.
  if (!(c1.integral < 0 && c2.integral > 0)) throw Error("internal: corner profile integrals have the wrong sign");

  long double e = 0.01L * span;
  for (int halvings = 0; halvings < 80; ++halvings, e /= 2) {
    auto f1 = smoothed(p, false, e), f2 = smoothed(p, true, e);
    if (!f1 || !f2) continue;
    CurveProfile p1(p, f1->x, f1->g), p2(p, f2->x, f2->g);
    long double J1 = p1.integral(), J2 = p2.integral();
    // The smoothing may move each integral by less than half of |I|: that is
    // the room a mean shift of |I|/(2(b-a)) leaves.
    if (!(std::fabs(J1 - c1.integral) < -c1.integral / 2 && std::fabs(J2 - c2.integral) < c2.integral / 2)) continue;

    long double w1 = J2 / (J2 - J1), w2 = -J1 / (J2 - J1);
    std::vector<long double> xs = f1->x;
    xs.insert(xs.end(), f2->x.begin(), f2->x.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<long double> gs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      long double g1 = eval_linear(*f1, xs[i]), g2 = eval_linear(*f2, xs[i]);
      gs[i] = std::clamp(g2 + w1 * (g1 - g2), std::min(g1, g2), std::max(g1, g2));
    }
    gs.front() = 1 / p.rho1;
    gs.back() = 1 / p.rho2;
    CurveProfile out(p, xs, gs);
    out.J1 = J1;
    out.J2 = J2;
    out.I1 = c1.integral;
    out.I2 = c2.integral;
    out.weight1 = w1;
    out.weight2 = w2;
    out.window = e;
    out.delta_margin = -c1.integral / (2 * span);
    out.halvings = halvings;
    return out;
  }
  throw SmoothingWindowInfeasible("no smoothing window down to 2^-80 (b-a) keeps the integral signs");
}

}  // namespace flatarc
