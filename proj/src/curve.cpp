#include <algorithm>
#include <cmath>
#include <set>

#include "flatarc/geometry.hpp"

namespace flatarc {

PiecewiseCurve PiecewiseCurve::translated(std::int64_t dx, std::int64_t dy) const {
  PiecewiseCurve out;
  for (const auto& s : segs_) out.append(s.translated(dx, dy));
  return out;
}

std::vector<LatticePoint> PiecewiseCurve::designated() const {
  std::set<LatticePoint> seen;
  for (const auto& s : segs_)
    for (const auto& p : s.designated()) seen.insert(p);
  return {seen.begin(), seen.end()};
}

CurveSummary curve_summary(const PiecewiseCurve& c, int samples_per_segment) {
  CurveSummary out;
  if (c.empty()) return out;
  const auto& segs = c.segments();
  out.segments = segs.size();
  out.rad_min = INFINITY;
  out.rad_lo = INFINITY;
  long double prev_angle = -INFINITY;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Segment& s = segs[k];
    long double err = 0;
    out.length += s.length(&err);
    out.length_err += err;
    RadRange rr = s.rad_range();
    out.rad_lo = std::min(out.rad_lo, rr.lo);
    out.rad_hi = std::max(out.rad_hi, rr.hi);
    std::vector<long double> us;
    for (int i = 0; i <= samples_per_segment; ++i) us.push_back(static_cast<long double>(i) / samples_per_segment);
    if (s.is_spline()) {
      // Knots carry the extremes of f', so sample them too.
      const auto& sp = s.spline();
      for (long double x : sp.profile().knots())
        if (x >= sp.s0() && x <= sp.s1()) us.push_back((x - sp.s0()) / (sp.s1() - sp.s0()));
      std::sort(us.begin(), us.end());
    }
    for (long double u : us) {
      long double r = s.rad(u);
      out.rad_min = std::min(out.rad_min, r);
      out.rad_max = std::max(out.rad_max, r);
    }
    if (k > 0) {
      Point e = segs[k - 1].end(), b = s.start();
      out.junction_gap = std::max(out.junction_gap, std::hypot(e.x - b.x, e.y - b.y));
      out.junction_angle = std::max(out.junction_angle, std::fabs(segs[k - 1].angle(1) - s.angle(0)));
      // Across a junction the tangent is shared; allow rounding only.
      if (s.angle(0) < prev_angle - 1e-12L) out.strictly_convex = false;
    }
    long double last = -INFINITY;
    for (std::size_t i = 0; i < us.size(); ++i) {
      if (i > 0 && us[i] == us[i - 1]) continue;
      long double a = s.angle(us[i]);
      if (i > 0 && !(a > last)) out.strictly_convex = false;
      last = a;
    }
    if (s.is_spline()) {
      for (long double g : s.spline().profile().knot_slopes())
        if (!(g > 0)) out.strictly_convex = false;
    }
    prev_angle = s.angle(1);
  }
  out.w = std::tan(segs.front().angle(0));
  out.end_slope = std::tan(segs.back().angle(1));
  out.x_begin = segs.front().x_begin();
  out.x_end = segs.back().x_end();
  out.designated = c.designated().size();
  return out;
}

std::vector<CurveSample> sample_curve(const PiecewiseCurve& c, int per_segment) {
  std::vector<CurveSample> out;
  const auto& segs = c.segments();
  for (std::size_t k = 0; k < segs.size(); ++k) {
    for (int i = k == 0 ? 0 : 1; i <= per_segment; ++i) {
      long double u = static_cast<long double>(i) / per_segment;
      Point p = segs[k].point(u);
      out.push_back({p.x, p.y, std::tan(segs[k].angle(u)), segs[k].rad(u)});
    }
  }
  return out;
}

LatticeCount count_lattice_points(const PiecewiseCurve& c, long double tol) {
  require(tol > 0 && tol < 0.25L, "tolerance must lie in (0, 1/4)");
  LatticeCount out;
  if (c.empty()) return out;
  std::set<LatticePoint> designated;
  for (const auto& p : c.designated()) designated.insert(p);
  const auto& segs = c.segments();
  bool first = true;
  long double last = 0;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    long double xb = segs[k].x_begin(), xe = segs[k].x_end();
    // After the first hit, continue from the last abscissa so that rounded
    // junction coordinates neither drop nor repeat an integer.
    long double n0 = first ? std::ceil(xb) : last + 1;
    for (long double n = n0; n <= std::floor(xe); n += 1) {
      Interval y = segs[k].y_at(n);
      long double half = y.width() / 2;
      out.max_error = std::max(out.max_error, half);
      if (half > tol / 2)
        throw ToleranceUnresolvable("evaluation error " + std::to_string(static_cast<double>(half)) +
                                    " exceeds tol/2 at x = " + std::to_string(static_cast<double>(n)));
      long double m = std::floor(y.mid() + 0.5L);
      long double dlo = y.contains(m) ? 0 : std::min(std::fabs(y.lo() - m), std::fabs(y.hi() - m));
      long double dhi = std::max(std::fabs(y.lo() - m), std::fabs(y.hi() - m));
      auto nx = static_cast<std::int64_t>(n);
      LatticePoint p{nx, static_cast<std::int64_t>(m)};
      if (dlo == 0 || designated.count(p)) ++out.possible;
      if (dhi < tol / 2) {
        out.points.push_back(p);
        ++out.candidates;
        if (designated.count(p)) ++out.certified;
      } else if (!(dlo > 2 * tol)) {
        out.ambiguous.push_back(nx);
      }
      last = n;
      first = false;
    }
  }
  if (out.certified != designated.size())
    throw Error("internal: " + std::to_string(designated.size() - out.certified) +
                " designated lattice points were not found by the scan");
  return out;
}

}  // namespace flatarc
