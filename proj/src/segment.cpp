#include <cfloat>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flatarc/geometry.hpp"

namespace flatarc {

namespace {

constexpr long double kSlack = 1e-12L;
bool le(long double x, long double y) { return x <= y + kSlack * std::max(1.0L, std::fabs(y)); }

}  // namespace

SplineSegment::SplineSegment(Point A, Point B, CurveProfile prof, bool lattice_A, bool lattice_B)
    : A_(A), B_(B), prof_(std::move(prof)), lat_A_(lattice_A), lat_B_(lattice_B) {
  Dx_ = B_.x - A_.x;
  Dy_ = B_.y - A_.y;
  L_ = std::sqrt(Dx_ * Dx_ + Dy_ * Dy_);
  require(L_ > 0, "spline segment needs A != B");
  require(prof_.params().a == 0 && prof_.params().b == L_, "spline profile must live on [0, |AB|]");
  phi_ = std::atan2(Dy_, Dx_);
  s0_ = 0;
  s1_ = L_;
  if (lat_A_) require(A_.x == std::floor(A_.x) && A_.y == std::floor(A_.y), "lattice endpoint A is not integral");
  if (lat_B_) require(B_.x == std::floor(B_.x) && B_.y == std::floor(B_.y), "lattice endpoint B is not integral");
}

SplineSegment SplineSegment::trimmed(long double s0, long double s1) const {
  require(0 <= s0 && s0 < s1 && s1 <= L_, "trim range must lie inside the segment");
  SplineSegment out = *this;
  out.s0_ = s0;
  out.s1_ = s1;
  out.lat_A_ = lat_A_ && s0 == 0;
  out.lat_B_ = lat_B_ && s1 == L_;
  return out;
}

SplineSegment SplineSegment::translated(std::int64_t dx, std::int64_t dy) const {
  SplineSegment out = *this;
  out.A_ = {A_.x + static_cast<long double>(dx), A_.y + static_cast<long double>(dy)};
  out.B_ = {B_.x + static_cast<long double>(dx), B_.y + static_cast<long double>(dy)};
  require(out.B_.x - out.A_.x == Dx_ && out.B_.y - out.A_.y == Dy_, "translation lost exactness");
  return out;
}

// P(s) = A + (s/L) D + F(s) (-Dy, Dx)/L. The ratio s/L is 1 exactly at
// s = L, so B is reproduced bit for bit.
Point SplineSegment::at(long double s) const {
  if (s == 0) return A_;
  if (s == L_) return B_;
  long double r = s / L_, F = prof_.F(s);
  return {A_.x + r * Dx_ - F * (Dy_ / L_), A_.y + r * Dy_ + F * (Dx_ / L_)};
}

long double SplineSegment::x_at(long double s) const { return at(s).x; }

long double SplineSegment::angle_at(long double s) const { return phi_ + std::atan(prof_.f(s)); }

Interval SplineSegment::x_enclosure(long double s) const {
  if (s == 0) return A_.x;
  if (s == L_) return B_.x;
  Interval r = Interval(s) / Interval(L_);
  return Interval(A_.x) + r * Interval(Dx_) - prof_.F_enclosure(Interval(s)) * Interval(Dy_ / L_);
}

Interval SplineSegment::y_enclosure(Interval s) const {
  Interval r = s / Interval(L_);
  return Interval(A_.y) + r * Interval(Dy_) + prof_.F_enclosure(s) * Interval(Dx_ / L_);
}

long double SplineSegment::s_of_x(long double X) const {
  long double s = std::clamp((X - A_.x) / Dx_ * L_, 0.0L, L_);
  for (int it = 0; it < 60; ++it) {
    long double f = prof_.f(s);
    long double dx = (Dx_ - f * Dy_) / L_;
    long double step = (x_at(s) - X) / dx;
    long double next = std::clamp(s - step, 0.0L, L_);
    if (std::fabs(next - s) <= 4 * LDBL_EPSILON * std::max(1.0L, std::fabs(s))) return next;
    s = next;
  }
  return s;
}

Interval SplineSegment::y_at(long double X) const {
  if (X == A_.x) return A_.y;
  if (X == B_.x) return B_.y;
  long double s = s_of_x(X);
  long double d = 8 * LDBL_EPSILON * std::max(1.0L, std::fabs(s));
  for (int attempt = 0; attempt < 24; ++attempt, d *= 4) {
    long double lo = std::max(0.0L, s - d), hi = std::min(L_, s + d);
    bool ok_lo = x_enclosure(lo).hi() <= X;
    bool ok_hi = x_enclosure(hi).lo() >= X;
    if (ok_lo && ok_hi) return y_enclosure(Interval(lo, hi));
  }
  throw ToleranceUnresolvable("could not bracket the abscissa " + std::to_string(static_cast<double>(X)));
}

ArcSegment::ArcSegment(Point Q, long double theta_q, long double t0, long double t1, long double R, bool lattice_Q)
    : Q_(Q), tq_(theta_q), t0_(t0), t1_(t1), R_(R), lat_(lattice_Q) {
  require(R > 0, "arc radius must be positive");
  require(t0 < t1, "arc angle range must be increasing");
  require(theta_q == t0 || theta_q == t1, "arc anchor must be an end of the arc");
  require(t0 > -M_PIl / 2 && t1 < M_PIl / 2, "arc must be a graph over x");
  if (lat_) require(Q.x == std::floor(Q.x) && Q.y == std::floor(Q.y), "lattice anchor is not integral");
  sq_ = std::sin(tq_);
  cq_ = std::cos(tq_);
}

ArcSegment ArcSegment::translated(std::int64_t dx, std::int64_t dy) const {
  ArcSegment out = *this;
  out.Q_ = {Q_.x + static_cast<long double>(dx), Q_.y + static_cast<long double>(dy)};
  return out;
}

Point ArcSegment::at(long double t) const {
  if (t == tq_) return Q_;
  long double m = (t + tq_) / 2, h = std::sin((t - tq_) / 2);
  return {Q_.x + 2 * R_ * std::cos(m) * h, Q_.y + 2 * R_ * std::sin(m) * h};
}

// y - Qy = d (d + 2 R sin tq) / (R cos tq + sqrt(R^2 - (d + R sin tq)^2))
// with d = X - Qx; no cancellation for small d.
Interval ArcSegment::y_at(long double X) const {
  if (X == Q_.x) return Q_.y;
  Interval d = Interval(X) - Interval(Q_.x);
  Interval R(R_);
  Interval v = d + R * Interval(sq_);
  Interval rad2 = square(R) - square(v);
  if (!(rad2.lo() > 0)) throw ToleranceUnresolvable("abscissa outside the arc");
  Interval y = Interval(Q_.y) + d * (d + Interval(2) * R * Interval(sq_)) / (R * Interval(cq_) + sqrt(rad2));
  // sin and cos of tq are stored rounded; the circle through Q they define
  // differs from radius R by a few ulps of R.
  return y.inflate(8 * LDBL_EPSILON * R_);
}

Point Segment::point(long double u) const {
  if (is_spline()) {
    const auto& s = spline();
    return s.at(u == 1 ? s.s1() : s.s0() + u * (s.s1() - s.s0()));
  }
  const auto& a = arc();
  return a.at(u == 1 ? a.t1() : a.t0() + u * (a.t1() - a.t0()));
}

long double Segment::angle(long double u) const {
  if (is_spline()) {
    const auto& s = spline();
    return s.angle_at(u == 1 ? s.s1() : s.s0() + u * (s.s1() - s.s0()));
  }
  const auto& a = arc();
  return u == 1 ? a.t1() : a.t0() + u * (a.t1() - a.t0());
}

long double Segment::rad(long double u) const {
  if (is_spline()) {
    const auto& s = spline();
    return s.rad_at(u == 1 ? s.s1() : s.s0() + u * (s.s1() - s.s0()));
  }
  return arc().R();
}

Interval Segment::y_at(long double X) const { return is_spline() ? spline().y_at(X) : arc().y_at(X); }

long double Segment::length(long double* err) const {
  if (!is_spline()) {
    const auto& a = arc();
    if (err) *err = 4 * LDBL_EPSILON * a.R() * (a.t1() - a.t0());
    return a.R() * (a.t1() - a.t0());
  }
  const auto& s = spline();
  const auto& prof = s.profile();
  auto integrand = [&](long double x) {
    long double v = prof.f(x);
    return std::sqrt(1 + v * v);
  };
  // Integrate knot to knot so every piece is smooth.
  std::vector<long double> cuts{s.s0()};
  for (long double k : prof.knots())
    if (k > s.s0() && k < s.s1()) cuts.push_back(k);
  cuts.push_back(s.s1());
  long double total = 0, total_err = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    long double e = 0;
    total += boost::math::quadrature::gauss_kronrod<long double, 31>::integrate(integrand, cuts[i], cuts[i + 1], 12,
                                                                                1e-17L, &e);
    total_err += e * (cuts[i + 1] - cuts[i]) + 8 * LDBL_EPSILON * (cuts[i + 1] - cuts[i]);
  }
  if (err) *err = total_err;
  return total;
}

RadRange Segment::rad_range() const {
  if (!is_spline()) return {arc().R(), arc().R()};
  Interval r = spline().profile().rad_range();
  return {r.lo(), r.hi()};
}

std::vector<LatticePoint> Segment::designated() const {
  std::vector<LatticePoint> out;
  auto lp = [](const Point& p) {
    return LatticePoint{static_cast<std::int64_t>(p.x), static_cast<std::int64_t>(p.y)};
  };
  if (is_spline()) {
    if (spline().lattice_A()) out.push_back(lp(spline().A()));
    if (spline().lattice_B()) out.push_back(lp(spline().B()));
  } else if (arc().lattice_Q()) {
    out.push_back(lp(arc().Q()));
  }
  return out;
}

Segment Segment::translated(std::int64_t dx, std::int64_t dy) const {
  if (is_spline()) return Segment(spline().translated(dx, dy));
  return Segment(arc().translated(dx, dy));
}

SplineSegment join_local(Point A, Point B, long double alpha, long double beta, long double rho, long double rho1,
                         long double rho2, bool lattice_A, bool lattice_B) {
  require_hypothesis(beta > 0 && le(beta, 1.0L / 3), "beta in (0, 1/3]");
  require_hypothesis(le(-3 * beta, alpha) && le(alpha, -beta / 3), "alpha in [-3 beta, -beta/3]");
  long double Dx = B.x - A.x, Dy = B.y - A.y;
  long double L = std::sqrt(Dx * Dx + Dy * Dy);
  require_hypothesis(le(beta * rho / 3, L) && le(L, 9 * beta * rho), "|AB| in [(1/3) beta rho, 9 beta rho]");
  ProfileParams p{rho, rho1, rho2, 0, L, alpha, beta};
  return SplineSegment(A, B, build_profile(p), lattice_A, lattice_B);
}

SplineSegment join_with_tangents(Point A, Point B, long double tan_A, long double tan_B, long double rho,
                                 long double rho1, long double rho2, bool lattice_A, bool lattice_B) {
  long double phi = std::atan2(B.y - A.y, B.x - A.x);
  long double alpha = std::tan(std::atan(tan_A) - phi), beta = std::tan(std::atan(tan_B) - phi);
  return join_local(A, B, alpha, beta, rho, rho1, rho2, lattice_A, lattice_B);
}

}  // namespace flatarc
