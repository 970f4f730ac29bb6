#include <algorithm>
#include <cmath>

#include "build_util.hpp"

namespace flatarc {

namespace detail {

FareyCore farey_core(const Rational& lo, const Rational& hi, std::int64_t M) {
  require(M >= 1, "Farey order must be positive");
  require(lo.sign() >= 0 && lo < hi && hi <= Rational(1), "interval must satisfy 0 <= lo < hi <= 1");
  require(hi - lo <= Rational(1, 30), "interval length must be at most 1/30");
  FareyCore out;
  out.fractions = enumerate_in_interval(M, lo, hi).fractions;
  const auto& f = out.fractions;
  if (f.size() < 3)
    throw TooFewFareyFractions("|F_M on I| >= 3 (found " + std::to_string(f.size()) + ")");
  long double M3 = static_cast<long double>(M) * M * M;
  out.R = M3;
  Integer M2 = Integer(static_cast<long>(M)) * M;
  auto tangent = [&](std::size_t j) { return mediant(f[j].value(), f[j + 1].value()); };
  out.first_tangent = tangent(0);
  out.ratio_lo = out.window_lo = INFINITY;
  out.ratio_hi = out.window_hi = -INFINITY;
  std::int64_t x = 0, y = 0;
  for (std::size_t j = 1; j + 1 < f.size(); ++j) {
    Integer kk = Integer(static_cast<long>(f[j].k)) * f[j].k;
    std::int64_t lambda = nearest_int(Rational(M2, kk)).get_si();
    Point A{static_cast<long double>(x), static_cast<long double>(y)};
    x += lambda * f[j].k;
    y += lambda * f[j].h;
    Point B{static_cast<long double>(x), static_cast<long double>(y)};
    Rational chord = f[j].value();
    long double alpha = local_tan(tangent(j - 1), chord), beta = local_tan(tangent(j), chord);
    long double L = std::hypot(B.x - A.x, B.y - A.y);
    out.ratio_lo = std::min(out.ratio_lo, alpha / beta);
    out.ratio_hi = std::max(out.ratio_hi, alpha / beta);
    out.window_lo = std::min(out.window_lo, L / (beta * M3));
    out.window_hi = std::max(out.window_hi, L / (beta * M3));
    out.curve.append(join_with_radii(A, B, alpha, beta, M3, M3, M3, true, true, out.env));
  }
  return out;
}

}  // namespace detail

using namespace detail;

ConstructionResult build_farey_curve(const Rational& lo, const Rational& hi, std::int64_t M, const Constants& c) {
  FareyCore core = farey_core(lo, hi, M);
  ConstructionResult res;
  res.regime = "farey";
  res.profile = c.name;
  res.params["M"] = std::to_string(M);
  res.params["I"] = "[" + lo.str() + ", " + hi.str() + "]";
  res.params["fractions"] = std::to_string(core.fractions.size());
  res.params["initial_tangent"] = core.first_tangent.str();
  res.curve = core.curve;
  measure(res, ld(core.first_tangent), core.env);
  long double M3 = core.R;
  add_claim(res, "length", "claim", 0, 32 * M3 * ld(hi - lo), res.summary.length + res.summary.length_err);
  add_claim(res, "lattice_count", "claim", static_cast<long double>(core.fractions.size() - 1), INFINITY,
            static_cast<long double>(res.count.certified));
  add_claim(res, "curvature_paper_min", "paper", M3 / 16, INFINITY, res.summary.rad_min);
  add_claim(res, "curvature_paper_max", "paper", 0, 16 * M3, res.summary.rad_max);
  add_claim(res, "junction_ratio_min", "check", -3, INFINITY, core.ratio_lo);
  add_claim(res, "junction_ratio_max", "check", -INFINITY, -1.0L / 3, core.ratio_hi);
  add_claim(res, "chord_window_min", "check", 1.0L / 3, INFINITY, core.window_lo);
  add_claim(res, "chord_window_max", "check", 0, 9, core.window_hi);
  return res;
}

}  // namespace flatarc
