#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flatarc/errors.hpp"
#include "flatarc/interval.hpp"

namespace flatarc {

struct Point {
  long double x = 0;
  long double y = 0;
};

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

// ---- trigonometric lemma -------------------------------------------------

struct TrigRatio {
  long double ratio = 0;
  long double lo = 0;
  long double hi = 0;
};

// (tan(theta+bt) - tan theta) / ((1 + tan^2 theta) tan bt) with the bracket
// [1 - ds, (1 - ds)/(1 - 2 ds)]. Throws HypothesisViolated when the tangents
// are not in [s, s+ds] within [0,1] or ds is outside [0, 1/2).
TrigRatio trig_ratio_bounds(long double theta, long double beta_tilde, long double s, long double ds);

// ---- profiles ------------------------------------------------------------

struct ProfileParams {
  long double rho = 1;
  long double rho1 = 1;
  long double rho2 = 1;
  long double a = 0;
  long double b = 1;
  long double alpha = -1;
  long double beta = 1;
};

// Unsmoothed two-slope profile: h1 (slopes 0.01/rho then 100/rho) or its
// mirror h2 (100/rho then 0.01/rho), both from (a, alpha) to (b, beta).
struct CornerProfile {
  long double x1 = 0;
  long double y1 = 0;
  long double integral = 0;   // direct trapezoid formula
  long double ratio = 0;      // 2 I / (rho beta^2) from the closed form in y1/beta
};
CornerProfile corner_profile(const ProfileParams& p, bool mirrored);

// f is piecewise linear in f' (so f is piecewise quadratic and F piecewise
// cubic) on the knots. f and F are integrated from a up to a middle knot and
// from b down to it, so f(a), f(b), F(a) = F(b) = 0 hold exactly.
class CurveProfile {
 public:
  CurveProfile() = default;
  CurveProfile(ProfileParams p, std::vector<long double> knots, std::vector<long double> slopes);

  const ProfileParams& params() const { return p_; }
  const std::vector<long double>& knots() const { return x_; }
  // f' at the knots.
  const std::vector<long double>& knot_slopes() const { return g_; }

  long double f(long double x) const;
  long double fprime(long double x) const;
  long double F(long double x) const;
  // (1 + f^2)^(3/2) / f'
  long double rad(long double x) const;

  Interval f_enclosure(Interval x) const;
  Interval F_enclosure(Interval x) const;

  // Rigorous per-piece range of rad from monotone f and linear f'.
  Interval rad_range() const;
  // Integral of f over [a,b] integrated forward only; the exact F(b) = 0 is
  // imposed from the other side, so this is the closure residual.
  long double integral() const { return closure_; }

  // Construction metadata.
  long double J1 = 0, J2 = 0;         // integrals of the two smoothed profiles
  long double I1 = 0, I2 = 0;         // integrals of the corner profiles
  long double weight1 = 0, weight2 = 0;  // J2/(J2-J1) and -J1/(J2-J1)
  long double window = 0;             // smoothing window width
  long double delta_margin = 0;       // |I|/(2(b-a)): allowed mean shift
  int halvings = 0;

 private:
  std::size_t piece(long double x) const;
  ProfileParams p_;
  std::vector<long double> x_, g_, fv_, Fv_;
  std::size_t meet_ = 0;
  long double closure_ = 0;
};

CurveProfile build_profile(const ProfileParams& p);

// ---- placed segments -----------------------------------------------------

struct RadRange {
  long double lo = 0;
  long double hi = 0;
};

// Graph of F from a profile on [0, L], placed so that local (0,0) goes to A
// and (L,0) to B: P(s) = A + (s/L)(B-A) + F(s) n with n the left unit
// normal. When A and B are integer points they are hit exactly. A trimmed
// segment keeps the parameter range [s0, s1].
class SplineSegment {
 public:
  SplineSegment(Point A, Point B, CurveProfile prof, bool lattice_A, bool lattice_B);

  const Point& A() const { return A_; }
  const Point& B() const { return B_; }
  const CurveProfile& profile() const { return prof_; }
  bool lattice_A() const { return lat_A_; }
  bool lattice_B() const { return lat_B_; }
  long double s0() const { return s0_; }
  long double s1() const { return s1_; }
  long double chord() const { return L_; }
  // Restricts to [s0, s1]; endpoints that move lose their lattice flag.
  SplineSegment trimmed(long double s0, long double s1) const;
  SplineSegment translated(std::int64_t dx, std::int64_t dy) const;

  Point at(long double s) const;
  long double angle_at(long double s) const;
  long double rad_at(long double s) const { return prof_.rad(s); }
  long double x_at(long double s) const;
  // Enclosure of y on the graph at abscissa X.
  Interval y_at(long double X) const;
  Interval x_enclosure(long double s) const;
  Interval y_enclosure(Interval s) const;
  long double s_of_x(long double X) const;

 private:
  Point A_, B_;
  CurveProfile prof_;
  bool lat_A_ = false, lat_B_ = false;
  long double Dx_ = 0, Dy_ = 0, L_ = 0, phi_ = 0, s0_ = 0, s1_ = 0;
};

// Circle arc of radius R through anchor Q where the tangent angle is
// theta_q; covers tangent angles [t0, t1] with theta_q equal to one end.
class ArcSegment {
 public:
  ArcSegment(Point Q, long double theta_q, long double t0, long double t1, long double R, bool lattice_Q);

  const Point& Q() const { return Q_; }
  long double theta_q() const { return tq_; }
  long double t0() const { return t0_; }
  long double t1() const { return t1_; }
  long double R() const { return R_; }
  bool lattice_Q() const { return lat_; }
  ArcSegment translated(std::int64_t dx, std::int64_t dy) const;

  Point at(long double t) const;
  Interval y_at(long double X) const;

 private:
  Point Q_;
  long double tq_ = 0, t0_ = 0, t1_ = 0, R_ = 1, sq_ = 0, cq_ = 1;
  bool lat_ = false;
};

class Segment {
 public:
  Segment(SplineSegment s) : v_(std::move(s)) {}  // NOLINT
  Segment(ArcSegment a) : v_(std::move(a)) {}     // NOLINT

  bool is_spline() const { return v_.index() == 0; }
  const SplineSegment& spline() const { return std::get<0>(v_); }
  const ArcSegment& arc() const { return std::get<1>(v_); }

  // Position, tangent angle and curvature radius at parameter u in [0,1].
  Point point(long double u) const;
  long double angle(long double u) const;
  long double rad(long double u) const;
  Point start() const { return point(0); }
  Point end() const { return point(1); }
  long double x_begin() const { return start().x; }
  long double x_end() const { return end().x; }
  Interval y_at(long double X) const;
  // Length with an error bound from Gauss-Kronrod quadrature.
  long double length(long double* err) const;
  RadRange rad_range() const;
  std::vector<LatticePoint> designated() const;
  Segment translated(std::int64_t dx, std::int64_t dy) const;

 private:
  std::variant<SplineSegment, ArcSegment> v_;
};

// Tangent slopes are given in the global frame. The local alpha, beta are
// the tangents of the angles from AB to the tangent lines.
SplineSegment join_with_tangents(Point A, Point B, long double tan_A, long double tan_B, long double rho,
                                 long double rho1, long double rho2, bool lattice_A = false,
                                 bool lattice_B = false);
// Same with alpha, beta already in the AB frame.
SplineSegment join_local(Point A, Point B, long double alpha, long double beta, long double rho, long double rho1,
                         long double rho2, bool lattice_A = false, bool lattice_B = false);

// ---- curves ---------------------------------------------------------------

class PiecewiseCurve {
 public:
  PiecewiseCurve() = default;
  void append(Segment s) { segs_.push_back(std::move(s)); }
  const std::vector<Segment>& segments() const { return segs_; }
  bool empty() const { return segs_.empty(); }
  PiecewiseCurve translated(std::int64_t dx, std::int64_t dy) const;
  // Deduplicated designated lattice points.
  std::vector<LatticePoint> designated() const;

 private:
  std::vector<Segment> segs_;
};

struct CurveSummary {
  long double length = 0;
  long double length_err = 0;
  long double rad_min = 0;  // sampled
  long double rad_max = 0;
  long double rad_lo = 0;   // rigorous per-piece enclosure
  long double rad_hi = 0;
  long double w = 0;        // initial slope
  long double end_slope = 0;
  long double x_begin = 0, x_end = 0;
  std::size_t segments = 0;
  std::size_t designated = 0;
  long double junction_gap = 0;    // largest endpoint mismatch between segments
  long double junction_angle = 0;  // largest tangent-angle mismatch
  bool strictly_convex = true;
};

CurveSummary curve_summary(const PiecewiseCurve& c, int samples_per_segment = 256);

struct CurveSample {
  long double x = 0, y = 0, slope = 0, rad = 0;
};
std::vector<CurveSample> sample_curve(const PiecewiseCurve& c, int per_segment);

struct LatticeCount {
  std::uint64_t certified = 0;
  std::uint64_t candidates = 0;
  std::uint64_t possible = 0;              // enclosure meets an integer; bounds the true count
  std::vector<LatticePoint> points;        // candidate points
  std::vector<std::int64_t> ambiguous;     // abscissas in the ambiguous band
  long double max_error = 0;               // largest enclosure half-width seen
};

// Scans every integer abscissa in range. A candidate has distance to the
// nearest integer certified below tol/2; distances certified above 2 tol are
// rejected; anything else is listed as ambiguous. Throws ToleranceUnresolvable
// when an enclosure is wider than tol/2.
LatticeCount count_lattice_points(const PiecewiseCurve& c, long double tol = 1e-6L);

}  // namespace flatarc
