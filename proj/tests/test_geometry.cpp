#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "flatarc/curve_io.hpp"
#include "flatarc/exact_arith.hpp"
#include "flatarc/geometry.hpp"

using namespace flatarc;

namespace {

// Admissible parameters for the profile lemma, drawn at random.
ProfileParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0, 1);
  ProfileParams p;
  p.rho = std::pow(10.0L, 1 + 5 * U(rng));
  p.rho1 = p.rho * (1 + 9 * U(rng));
  p.rho2 = p.rho * (1 + 9 * U(rng));
  p.beta = 1e-4L + (1.0L / 3 - 1e-4L) * U(rng);
  long double lambda = 1.0L / 3 + (3 - 1.0L / 3) * U(rng);
  p.alpha = -lambda * p.beta;
  p.a = 0;
  p.b = p.beta * p.rho * (1.0L / 3 + (9 - 1.0L / 3) * U(rng));
  return p;
}

// Integral of f by Gauss-Kronrod over each piece, independent of F.
long double integrate_f(const CurveProfile& prof) {
  const auto& x = prof.knots();
  long double total = 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    total += boost::math::quadrature::gauss_kronrod<long double, 15>::integrate(
        [&](long double t) { return prof.f(t); }, x[i], x[i + 1], 0, 0);
  return total;
}

PiecewiseCurve single(Segment s) {
  PiecewiseCurve c;
  c.append(std::move(s));
  return c;
}

}  // namespace

TEST_CASE("trig ratio examples") {
  auto r = trig_ratio_bounds(0, std::atan(0.1L), 0, 0.1L);
  CHECK(r.lo == doctest::Approx(0.9));
  CHECK(r.hi == doctest::Approx(0.9 / 0.8));
  CHECK(r.ratio >= r.lo);
  CHECK(r.ratio <= r.hi);
  CHECK(static_cast<double>(r.ratio) == doctest::Approx(1.0));

  // Small ds: the bracket collapses towards [1, 1].
  long double t0 = 0.3L, ds = 1e-9L;
  auto z = trig_ratio_bounds(std::atan(t0), std::atan(t0 + ds / 2) - std::atan(t0), t0, ds);
  CHECK(static_cast<double>(z.hi - z.lo) < 1e-8);
  CHECK(static_cast<double>(std::fabs(z.ratio - 1)) < 1e-6);

  CHECK_THROWS_AS(trig_ratio_bounds(0, 0.1L, 0, 0.6L), HypothesisViolated);
  CHECK_THROWS_AS(trig_ratio_bounds(std::atan(0.5L), 0.1L, 0, 0.1L), HypothesisViolated);
}

TEST_CASE("trig ratio containment on random admissible angles") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 1000; ++i) {
    long double ds = 0.49L * U(rng), s = (1 - ds) * U(rng);
    long double t0 = s + ds * U(rng), t1 = s + ds * U(rng);
    if (t0 == t1) continue;
    long double theta = std::atan(t0), bt = std::atan(t1) - theta;
    auto r = trig_ratio_bounds(theta, bt, s, ds);
    CHECK(r.ratio >= r.lo - 1e-12L);
    CHECK(r.ratio <= r.hi + 1e-12L);
    // Addition formula: the ratio equals 1/(1 - tan theta tan bt).
    long double want = 1 / (1 - std::tan(theta) * std::tan(bt));
    CHECK(static_cast<double>(std::fabs(r.ratio - want)) < 1e-12);
  }
}

TEST_CASE("corner profile integral has the stated sign") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    ProfileParams p = random_params(rng);
    CornerProfile c = corner_profile(p, false);
    CHECK(c.ratio < -0.011L);
    // The closed form agrees with the trapezoid formula.
    long double direct = 2 * c.integral / (p.rho * p.beta * p.beta);
    CHECK(static_cast<double>(std::fabs(direct - c.ratio)) < 1e-9 * std::max(1.0, std::fabs((double)c.ratio)));
    CHECK(c.x1 > p.a);
    CHECK(c.x1 < p.b);
    CHECK(c.y1 > p.alpha);
    CHECK(c.y1 < p.beta);
    CHECK(corner_profile(p, true).integral > 0);
  }
}

TEST_CASE("symmetric profile integrates to zero") {
  ProfileParams p{1000, 1000, 1000, 0, 200, -0.2L, 0.2L};
  CurveProfile prof = build_profile(p);
  long double scale = (p.b - p.a) * p.beta;
  CHECK(static_cast<double>(std::fabs(integrate_f(prof)) / scale) < 1e-12);
  CHECK(static_cast<double>(std::fabs(prof.integral()) / scale) < 1e-12);
  CHECK(prof.f(p.a) == p.alpha);
  CHECK(prof.f(p.b) == p.beta);
  CHECK(prof.F(p.a) == 0);
  CHECK(prof.F(p.b) == 0);
}

TEST_CASE("profile conclusions on random builds") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    ProfileParams p = random_params(rng);
    CurveProfile prof = build_profile(p);
    CHECK(prof.f(p.a) == p.alpha);
    CHECK(prof.f(p.b) == p.beta);
    CHECK(prof.fprime(p.a) == 1 / p.rho1);
    CHECK(prof.fprime(p.b) == 1 / p.rho2);
    CHECK(prof.F(p.a) == 0);
    CHECK(prof.F(p.b) == 0);
    long double scale = (p.b - p.a) * std::max(-p.alpha, p.beta);
    CHECK(static_cast<double>(std::fabs(integrate_f(prof)) / scale) < 1e-12);

    // Mixture weights, exactly.
    CHECK(prof.J1 < 0);
    CHECK(prof.J2 > 0);
    Rational J1 = Rational::from_long_double(prof.J1), J2 = Rational::from_long_double(prof.J2);
    Rational w1 = J2 / (J2 - J1), w2 = -J1 / (J2 - J1);
    CHECK(w1 + w2 == Rational(1));
    CHECK(w1.sign() > 0);
    CHECK(w2.sign() > 0);

    long double lo = 0.01L / std::max(p.rho1, p.rho2), hi = 100 / p.rho;
    long double rlo = 0.01L * p.rho, rhi = 300 * std::max(p.rho1, p.rho2);
    for (int k = 0; k <= 2000; ++k) {
      long double x = p.a + (p.b - p.a) * k / 2000;
      long double g = prof.fprime(x);
      CHECK(g >= lo);
      CHECK(g <= hi);
      long double r = prof.rad(x);
      CHECK(r >= rlo * (1 - 1e-15L));
      CHECK(r <= rhi);
    }
    Interval rr = prof.rad_range();
    CHECK(rr.lo() >= rlo * (1 - 1e-15L));
    CHECK(rr.hi() <= rhi);
  }
}

TEST_CASE("endpoint radius of curvature") {
  ProfileParams p{100, 100, 150, 0, 100.0L / 3, -1.0L / 3, 1.0L / 3};
  CurveProfile prof = build_profile(p);
  long double want = 100 * std::pow(1 + 1.0L / 9, 1.5L);
  CHECK(static_cast<double>(std::fabs(prof.rad(p.a) - want) / want) < 1e-15);
  long double want_b = 150 * std::pow(1 + 1.0L / 9, 1.5L);
  CHECK(static_cast<double>(std::fabs(prof.rad(p.b) - want_b) / want_b) < 1e-15);
}

TEST_CASE("profile hypotheses are enforced") {
  CHECK_THROWS_AS(build_profile({100, 50, 150, 0, 30, -0.3L, 0.3L}), HypothesisViolated);
  CHECK_THROWS_AS(build_profile({100, 100, 100, 0, 30, -0.05L, 0.3L}), HypothesisViolated);
  CHECK_THROWS_AS(build_profile({100, 100, 100, 0, 1000, -0.3L, 0.3L}), HypothesisViolated);
  CHECK_THROWS_AS(build_profile({100, 100, 100, 0, 30, -0.3L, -0.1L}), HypothesisViolated);
}

TEST_CASE("curvature formula matches finite differences") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> U(0, 1);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    CurveProfile prof = build_profile(random_params(rng));
    const auto& x = prof.knots();
    // F is cubic on each piece, so the five-point first difference and the
    // central second difference are exact up to rounding; sample the wide
    // pieces, where h can be large.
    std::vector<std::size_t> wide;
    for (std::size_t j = 0; j + 1 < x.size(); ++j)
      if (x[j + 1] - x[j] >= (x.back() - x.front()) / 100) wide.push_back(j);
    REQUIRE(!wide.empty());
    for (int k = 0; k < 100; ++k) {
      std::size_t j = wide[static_cast<std::size_t>(U(rng) * wide.size())];
      long double w = x[j + 1] - x[j];
      long double t = x[j] + w / 4 + (w / 2) * U(rng);
      long double h = std::min(t - x[j], x[j + 1] - t) * 0.49L;
      long double d1 = (8 * (prof.F(t + h) - prof.F(t - h)) - (prof.F(t + 2 * h) - prof.F(t - 2 * h))) / (12 * h);
      long double d2 = (prof.F(t + h) - 2 * prof.F(t) + prof.F(t - h)) / (h * h);
      long double fd = std::pow(1 + d1 * d1, 1.5L) / d2;
      CHECK(static_cast<double>(std::fabs(fd - prof.rad(t)) / prof.rad(t)) < 1e-6);
      ++checked;
    }
  }
  CHECK(checked == 2000);
}

TEST_CASE("frame-aligned join hits both ends with the given tangents") {
  long double L = 60, beta = 0.2L;
  SplineSegment s = join_with_tangents({0, 0}, {L, 0}, -beta, beta, 300, 300, 300, true, true);
  CHECK(s.at(0).x == 0);
  CHECK(s.at(0).y == 0);
  CHECK(s.at(L).x == L);
  CHECK(s.at(L).y == 0);
  CHECK(static_cast<double>(std::fabs(std::tan(s.angle_at(0)) + beta)) < 1e-15);
  CHECK(static_cast<double>(std::fabs(std::tan(s.angle_at(L)) - beta)) < 1e-15);
  CHECK(s.y_at(0).lo() == 0);
  CHECK(s.y_at(L).hi() == 0);
}

TEST_CASE("random joins between lattice points") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> U(0, 1);
  int built = 0;
  for (int i = 0; i < 200; ++i) {
    Point A{std::floor(1000 * U(rng)), std::floor(1000 * U(rng))};
    long double dx = 10 + std::floor(5000 * U(rng)), dy = std::floor(dx * 0.5L * U(rng));
    Point B{A.x + dx, A.y + dy};
    long double L = std::hypot(dx, dy), phi = std::atan2(dy, dx);
    long double beta = 0.01L + 0.32L * U(rng), lambda = 1.0L / 3 + 2.6L * U(rng);
    long double alpha = -lambda * beta;
    long double rho = L / (beta * (0.34L + 8.6L * U(rng)));
    long double rho1 = rho * (1 + 3 * U(rng)), rho2 = rho * (1 + 3 * U(rng));
    SplineSegment s = join_local(A, B, alpha, beta, rho, rho1, rho2, true, true);
    ++built;
    CHECK(s.at(0).x == A.x);
    CHECK(s.at(0).y == A.y);
    CHECK(s.at(s.chord()).x == B.x);
    CHECK(s.at(s.chord()).y == B.y);
    CHECK(static_cast<double>(std::fabs(s.angle_at(0) - (phi + std::atan(alpha)))) < 1e-15);
    CHECK(static_cast<double>(std::fabs(s.angle_at(s.chord()) - (phi + std::atan(beta)))) < 1e-15);

    PiecewiseCurve c = single(s);
    CurveSummary sum = curve_summary(c);
    CHECK(sum.strictly_convex);
    CHECK(sum.length >= L);
    long double fmax = std::max(-alpha, beta);
    CHECK(sum.length <= L * std::sqrt(1 + fmax * fmax));
    // Wide envelope of the two published ranges.
    CHECK(sum.rad_min >= rho / 250);
    CHECK(sum.rad_max <= 300 * std::max(rho1, rho2));
    CHECK(sum.rad_lo >= rho / 250);
    CHECK(sum.rad_hi <= 300 * std::max(rho1, rho2));

    LatticeCount n = count_lattice_points(c);
    CHECK(n.certified == 2);
    CHECK(n.candidates >= 2);
    CHECK(n.ambiguous.empty());
    LatticeCount t = count_lattice_points(c.translated(-37, 1001));
    CHECK(t.certified == n.certified);
    CHECK(t.candidates == n.candidates);
  }
  CHECK(built == 200);
}

TEST_CASE("lattice points on a circle of radius 5") {
  // x^2 + y^2 = 25, rotated by 180 degrees so that the arc is convex:
  // (3,4), (4,3) become (-3,-4), (-4,-3).
  long double t = std::atan(4.0L / 3) + 0.01L;
  PiecewiseCurve c;
  c.append(ArcSegment({0, -5}, 0, -t, 0, 5, true));
  c.append(ArcSegment({0, -5}, 0, 0, t, 5, true));
  LatticeCount n = count_lattice_points(c);
  std::vector<LatticePoint> want;
  for (long x = -4; x <= 4; ++x)
    for (long y = -5; y < 0; ++y)
      if (x * x + y * y == 25) want.push_back({x, y});
  CHECK(n.points == want);
  CHECK(n.candidates == 5);
  CHECK(n.certified == 1);
  CHECK(n.ambiguous.empty());

  CurveSummary s = curve_summary(c);
  CHECK(static_cast<double>(s.length) == doctest::Approx(static_cast<double>(5 * 2 * t)).epsilon(1e-15));
  CHECK(s.rad_min == 5);
  CHECK(s.rad_max == 5);
  CHECK(s.strictly_convex);
  CHECK(static_cast<double>(s.junction_gap) == 0);
}

TEST_CASE("summary is additive and empty curves count nothing") {
  PiecewiseCurve e;
  LatticeCount n = count_lattice_points(e);
  CHECK(n.certified == 0);
  CHECK(n.candidates == 0);

  SplineSegment s1 = join_local({0, 0}, {100, 0}, -0.1L, 0.1L, 500, 500, 500, true, true);
  long double th = std::atan(0.1L);
  ArcSegment a({100, 0}, th, th, th + 0.05L, 500, true);
  PiecewiseCurve c;
  c.append(s1);
  c.append(a);
  CurveSummary sc = curve_summary(c), ss = curve_summary(single(s1)), sa = curve_summary(single(a));
  CHECK(static_cast<double>(std::fabs(sc.length - ss.length - sa.length)) < 1e-12);
  CHECK(static_cast<double>(std::fabs(sa.length - 25)) < 1e-12);
  CHECK(sc.strictly_convex);
  CHECK(static_cast<double>(sc.junction_angle) < 1e-15);
  CHECK(static_cast<double>(sc.w) == doctest::Approx(-0.1));
}

TEST_CASE("a line meets a convex segment at most twice") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> U(0, 1);
  SplineSegment s = join_local({0, 0}, {400, 100}, -0.2L, 0.25L, 900, 1000, 1200);
  std::vector<Point> pts;
  for (int k = 0; k <= 4000; ++k) pts.push_back(s.at(s.chord() * k / 4000));
  for (int i = 0; i < 200; ++i) {
    long p = static_cast<long>(U(rng) * 40), q = 1 + static_cast<long>(U(rng) * 40);
    long double slope = static_cast<long double>(p) / q;
    const Point& through = pts[static_cast<std::size_t>(U(rng) * 4000)];
    int changes = 0;
    long double prev = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      long double v = pts[k].y - (through.y + slope * (pts[k].x - through.x));
      if (k > 0 && ((v > 0) != (prev > 0))) ++changes;
      prev = v;
    }
    CHECK(changes <= 2);
  }
}

TEST_CASE("curve files round-trip bit for bit") {
  SplineSegment s1 = join_local({0, 0}, {100, 0}, -0.1L, 0.1L, 500, 500, 500, true, true);
  long double th = std::atan(0.1L);
  CurveFile f;
  f.curve.append(s1.trimmed(1.5L, 100));
  f.curve.append(ArcSegment({100, 0}, th, th, th + 0.05L, 500, true));
  f.meta["w"] = "rat:1/10";
  std::string text = write_curve(f);
  CurveFile g = read_curve(text);
  CHECK(write_curve(g) == text);
  CHECK(g.meta.at("w") == "rat:1/10");
  for (long x = 2; x <= 120; ++x) {
    Interval y1 = f.curve.segments()[x <= 100 ? 0 : 1].y_at(x);
    Interval y2 = g.curve.segments()[x <= 100 ? 0 : 1].y_at(x);
    CHECK(y1.lo() == y2.lo());
    CHECK(y1.hi() == y2.hi());
  }
  CHECK_THROWS_AS(read_curve("flatarc-curve 2\nend\n"), InvalidInput);
  CHECK_THROWS_AS(read_curve("flatarc-curve 1\nsegments 1\nend\n"), InvalidInput);
  CHECK_THROWS_AS(read_curve("flatarc-curve 1\nsegments 0\nlattice 1 2\nend\n"), InvalidInput);

  std::string svg = render_svg(f.curve, {{100, 0}});
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("<circle") != std::string::npos);
  std::string csv = samples_csv(f.curve, 10);
  CHECK(csv.rfind("x,y,slope,rad\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);
}
