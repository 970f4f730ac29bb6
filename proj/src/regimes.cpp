#include <algorithm>
#include <cmath>

#include "build_util.hpp"

namespace flatarc {

using namespace detail;

namespace {

// Largest convergent a/q of w with q^3 < r.
Convergent dirichlet_convergent(const SlopeValue& w, const Rational& r) {
  Integer cap = floor_cbrt(r.floor()) + 1;
  ConvergentSeq seq = convergents_up_to(w, cap);
  const Convergent* best = nullptr;
  for (const auto& cv : seq.entries)
    if (Rational(Integer(cv.q * cv.q * cv.q)) < r) best = &cv;
  require(best != nullptr, "no convergent with q^3 < r");
  return *best;
}

// ||q w||^3 r <= 1, i.e. |w - a/q| <= 1/(q r^(1/3)) with a = [q w].
bool close_approximation(const SlopeValue& w, const Integer& q, const Rational& r) {
  CertifiedReal n = fractional_norm(w.times(q));
  return compare(n * n * n * CertifiedReal(r), CertifiedReal(Rational(1))) <= 0;
}

// Convergent denominators q <= K4 r^(2/3)/ell with ||q w||^3 r <= 1, largest
// first.
std::vector<Convergent> rational_witnesses(const ConstructionSpec& spec) {
  long double r3 = std::cbrt(spec.r);
  long double Q = std::floor(spec.constants.K4 * r3 * r3 / spec.ell);
  std::vector<Convergent> out;
  if (Q < 1) return out;
  Integer qmax = Rational::from_long_double(Q).floor();
  ConvergentSeq seq = convergents_up_to(spec.w, qmax);
  Rational r = exact(spec.r);
  for (const auto& cv : seq.entries)
    if (cv.q <= qmax && close_approximation(spec.w, cv.q, r)) out.push_back(cv);
  std::reverse(out.begin(), out.end());
  return out;
}

Point end_point(const PiecewiseCurve& c) { return c.segments().back().end(); }

}  // namespace

ConstructionResult build_irrational_curve(const ConstructionSpec& spec) {
  const Constants& c = spec.constants;
  ConstructionResult res;
  res.regime = regime_name(Regime::irrational);
  res.profile = c.name;
  require(spec.ell > 1 && spec.r > 1, "need ell > 1 and r > 1");
  long double r3 = std::cbrt(spec.r);
  require_hypothesis(spec.ell > c.irr_ell * r3, "ell > irr_ell r^(1/3)");
  require_hypothesis(spec.ell < r3 * r3, "ell < r^(2/3)");
  auto witnesses = rational_witnesses(spec);
  if (!witnesses.empty())
    throw HypothesisViolated("no a/q with q <= K4 r^(2/3)/ell and |w - a/q| <= 1/(q r^(1/3)) (fails for " +
                             fmt(witnesses.front().a) + "/" + fmt(witnesses.front().q) + ")");
  Rational r = exact(spec.r);
  Convergent cv = dirichlet_convergent(spec.w, r);
  const Integer &a = cv.a, &q = cv.q;
  Integer M = Rational::from_long_double(std::floor(c.C * ld(nearest_int_cbrt(r)))).floor();
  Rational lo(a, q), hi = lo + exact(spec.ell) / (exact(c.interval_div) * r);
  require_hypothesis(hi <= Rational(1), "a/q + ell/(interval_div r) <= 1");
  res.params["a"] = fmt(a);
  res.params["q"] = fmt(q);
  res.params["M"] = fmt(M);
  res.params["I"] = "[" + lo.str() + ", " + hi.str() + "]";
  res.rationale.push_back("a/q = " + fmt(a) + "/" + fmt(q) + " is the convergent with largest q^3 < r");
  FareyCore core;
  try {
    core = farey_core(lo, hi, M.get_si());
  } catch (const TooFewFareyFractions& e) {
    throw HypothesisViolated(e.what());
  }
  res.params["fractions"] = std::to_string(core.fractions.size());
  res.params["initial_tangent"] = core.first_tangent.str();
  res.curve = core.curve;
  Envelope env = core.env;
  int cmp = compare_slope(spec.w, core.first_tangent);
  StartFix fix = fix_initial_slope(res.curve, spec.w, cmp, env);
  res.params["start"] = fix.extended ? "arc" : (fix.trimmed ? "trimmed" : "exact");
  res.params["deleted"] = std::to_string(fix.deleted);
  measure(res, spec.w.value().to_long_double(), env);
  long double M3 = ld(M) * ld(M) * ld(M), Ml = ld(M), ql = ld(q);
  add_claim(res, "length", "claim", 0, spec.ell, res.summary.length + res.summary.length_err);
  add_claim(res, "lattice_count", "claim", c.irr_count() * spec.ell / r3, INFINITY,
            static_cast<long double>(res.count.certified));
  long double C3 = c.C * c.C * c.C;
  add_claim(res, "curvature_paper_min", "paper", C3 * spec.r / 32, INFINITY, res.summary.rad_min);
  add_claim(res, "curvature_paper_max", "paper", 0, 32 * C3 * spec.r, res.summary.rad_max);
  add_claim(res, "junction_ratio_min", "check", -3, INFINITY, core.ratio_lo);
  add_claim(res, "junction_ratio_max", "check", -INFINITY, -1.0L / 3, core.ratio_hi);
  add_claim(res, "chord_window_min", "check", 1.0L / 3, INFINITY, core.window_lo);
  add_claim(res, "chord_window_max", "check", 0, 9, core.window_hi);
  long double dist = (spec.w.value() - CertifiedReal(lo)).abs().to_long_double();
  add_claim(res, "trim_deleted", "check", 0, 1 + Ml * Ml * dist, static_cast<long double>(fix.deleted));
  add_claim(res, "arc_length", "check", 0, fix.arc_angle * 16 * M3, fix.arc_length);
  long double tgap = std::fabs(ld(core.first_tangent) - spec.w.value().to_long_double());
  add_claim(res, "tangent_gap", "check", 0, 1 / (ql * Ml) + 1 / (ql * r3), tgap);
  add_claim(res, "tangent_gap_paper", "paper", 0, 2 * spec.ell / (c.K4 * spec.r), tgap);
  long double z = spec.ell * Ml * ql / (c.interval_div * spec.r);
  add_claim(res, "farey_window_z", "paper", c.C_farey, INFINITY, z);
  add_claim(res, "farey_order_ratio", "paper", c.C, INFINITY, Ml / ql);
  return res;
}

ConstructionResult build_trivial_curve(const ConstructionSpec& spec) {
  ConstructionResult res;
  res.regime = regime_name(Regime::trivial);
  res.profile = spec.constants.name;
  require(spec.ell > 0 && spec.r > 0, "need ell > 0 and r > 0");
  long double t0 = std::atan(spec.w.value().to_long_double());
  long double turn = std::min(spec.ell / (2 * spec.r), 0.5L);
  res.curve.append(ArcSegment({0, 0}, t0, t0, t0 + turn, spec.r, true));
  Envelope env;
  env.add_radius(spec.r);
  measure(res, spec.w.value().to_long_double(), env);
  add_claim(res, "length", "claim", 0, spec.ell, res.summary.length + res.summary.length_err);
  add_claim(res, "lattice_count", "claim", 1, INFINITY, static_cast<long double>(res.count.certified));
  return res;
}

ConstructionResult build_glued_curve(const ConstructionSpec& spec) {
  const Constants& c = spec.constants;
  ConstructionResult res;
  res.regime = regime_name(Regime::glued);
  res.profile = c.name;
  require(spec.ell > 1 && spec.r > 1, "need ell > 1 and r > 1");
  long double r3 = std::cbrt(spec.r);
  require_hypothesis(spec.ell > r3 * r3 / 12, "ell > r^(2/3)/12");
  long double rs = c.glue_radius * spec.r;
  long double ls = std::pow(rs, 2.0L / 3) / c.glue_len_div;
  long double gap = c.glue_gap * r3 * r3, turn = c.glue_turn / r3, rho = c.glue_rho * spec.r;
  res.params["sub_radius"] = fmt(rs);
  res.params["sub_length"] = fmt(ls);
  res.params["gap"] = fmt(gap);
  res.params["turn"] = fmt(turn);
  res.params["connector_rho"] = fmt(rho);

  Envelope env;
  long double used = 0;
  std::uint64_t designated = 0;
  long double piece_lo = 0;
  std::string regimes;
  long double ab_lo = INFINITY, ab_hi = 0;
  SlopeValue w = spec.w;
  for (int piece = 0;; ++piece) {
    ConstructionSpec sub{w, piece == 0 ? std::min(ls, spec.ell) : ls, rs, c, Regime::automatic, {}, {}};
    ConstructionResult part = build_curve(sub);
    if (!part.satisfied())
      throw Error("internal: glued piece " + std::to_string(piece) + " misses one of its own claims");
    for (const auto& s : part.curve.segments()) {
      if (s.is_spline()) env.add(s.spline().profile().params());
      else env.add_radius(s.arc().R());
    }
    PiecewiseCurve placed = part.curve;
    long double extra = 0;
    Segment* conn = nullptr;
    std::optional<Segment> connector;
    if (piece > 0) {
      const Segment& last = res.curve.segments().back();
      long double tA = last.angle(1);
      Point A = last.end();
      Point target{A.x + gap * std::cos(tA + turn), A.y + gap * std::sin(tA + turn)};
      Point S = part.curve.segments().front().start();
      // Among translations landing within 1 of the target, the one closest to
      // the aimed chord direction.
      long double ux = std::cos(tA + turn), uy = std::sin(tA + turn);
      long double fx = std::floor(target.x - S.x), fy = std::floor(target.y - S.y);
      std::int64_t dx = 0, dy = 0;
      long double best = INFINITY;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          long double ex = S.x + fx + i - target.x, ey = S.y + fy + j - target.y;
          if (std::hypot(ex, ey) > 1) continue;
          long double perp = std::fabs(ex * uy - ey * ux);
          if (perp < best) {
            best = perp;
            dx = static_cast<std::int64_t>(fx) + i;
            dy = static_cast<std::int64_t>(fy) + j;
          }
        }
      placed = part.curve.translated(dx, dy);
      Point B = placed.segments().front().start();
      long double tB = placed.segments().front().angle(0);
      long double phi = std::atan2(B.y - A.y, B.x - A.x);
      long double R_A = last.rad(1), R_B = placed.segments().front().rad(0);
      try {
        connector = Segment(join_with_radii(A, B, std::tan(tA - phi), std::tan(tB - phi), R_A, R_B, rho, false,
                                            false, env));
      } catch (const HypothesisViolated& e) {
        throw PlacementInfeasible(std::string("connector ") + std::to_string(piece) + ": " + e.what());
      }
      conn = &*connector;
      long double err = 0;
      extra = conn->length(&err) + err;
      long double ab = std::hypot(B.x - A.x, B.y - A.y);
      ab_lo = std::min(ab_lo, ab);
      ab_hi = std::max(ab_hi, ab);
    }
    long double plen = part.summary.length + part.summary.length_err;
    if (piece > 0 && used + extra + plen > spec.ell) break;
    if (conn) res.curve.append(*conn);
    for (const auto& s : placed.segments()) res.curve.append(s);
    used += extra + plen;
    designated += part.count.certified;
    piece_lo += part.claim("lattice_count").lo;
    res.piece_counts.push_back(part.count.certified);
    regimes += (regimes.empty() ? "" : ",") + part.regime;
    long double t_end = res.curve.segments().back().angle(1);
    long double w_next = std::tan(t_end + 2 * turn);
    if (w_next > 1) {
      res.rationale.push_back("stopped: next initial slope would exceed 1");
      break;
    }
    w = SlopeValue::from_rational(exact(w_next));
  }
  res.params["pieces"] = std::to_string(res.piece_counts.size());
  res.params["piece_regimes"] = regimes;
  measure(res, spec.w.value().to_long_double(), env);
  add_claim(res, "length", "claim", 0, spec.ell, res.summary.length + res.summary.length_err);
  // Each piece keeps its own certified count. Near rational slopes the
  // pieces fall back to single points at desk scale, so the linear form is
  // informational.
  add_claim(res, "lattice_count", "claim", piece_lo, INFINITY, static_cast<long double>(res.count.certified));
  add_claim(res, "lattice_count_linear", "paper", c.glue_count * spec.ell / r3, INFINITY,
            static_cast<long double>(res.count.certified));
  add_claim(res, "curvature_vs_r", "claim", spec.r, INFINITY, res.summary.rad_min);
  add_check(res, "piece_sum", res.count.certified == designated, static_cast<long double>(designated),
            static_cast<long double>(designated), static_cast<long double>(res.count.certified));
  if (res.piece_counts.size() > 1) {
    add_claim(res, "connector_chord_paper_min", "paper", r3 * r3 - 2, INFINITY, ab_lo);
    add_claim(res, "connector_chord_paper_max", "paper", 0, r3 * r3 + 2, ab_hi);
  }
  (void)end_point;
  return res;
}

ConstructionResult build_curve(const ConstructionSpec& spec) {
  const Constants& c = spec.constants;
  switch (spec.regime) {
    case Regime::trivial: return build_trivial_curve(spec);
    case Regime::irrational: return build_irrational_curve(spec);
    case Regime::very_near: return build_rational_curve_very_near(spec);
    case Regime::near: return build_rational_curve_near(spec);
    case Regime::glued: return build_glued_curve(spec);
    case Regime::farey: {
      Rational r = exact(spec.r);
      Convergent cv = dirichlet_convergent(spec.w, r);
      Integer M = Rational::from_long_double(std::floor(c.C * ld(nearest_int_cbrt(r)))).floor();
      Rational lo(cv.a, cv.q);
      auto res = build_farey_curve(lo, lo + exact(spec.ell) / (exact(c.interval_div) * r), M.get_si(), c);
      res.rationale.push_back("I starts at the convergent " + lo.str() + " with largest q^3 < r");
      return res;
    }
    case Regime::rational: {
      ConstructionResult probe;
      auto [a, q] = rational_pair(spec, probe);
      CertifiedReal d = (spec.w.value() - CertifiedReal(Rational(a, q))).abs();
      Rational limit = exact(spec.ell) / (exact(c.very_near_div) * exact(spec.r));
      ConstructionSpec s = spec;
      s.a = a;
      s.q = q;
      s.regime = compare(d, CertifiedReal(limit)) <= 0 ? Regime::very_near : Regime::near;
      auto res = build_curve(s);
      if (!res.rationale.empty()) res.rationale.erase(res.rationale.begin());  // "given"
      res.rationale.insert(res.rationale.begin(), probe.rationale.begin(), probe.rationale.end());
      return res;
    }
    case Regime::automatic: break;
  }
  std::vector<std::string> why;
  long double r3 = std::cbrt(spec.r);
  auto done = [&](ConstructionResult res) {
    why.insert(why.end(), res.rationale.begin(), res.rationale.end());
    res.rationale = why;
    return res;
  };
  auto attempt = [&](ConstructionSpec s) -> std::optional<ConstructionResult> {
    try {
      return build_curve(s);
    } catch (const HypothesisViolated& e) {
      why.push_back(regime_name(s.regime) + " rejected: " + e.what());
      return std::nullopt;
    }
  };
  if (spec.ell > r3 * r3 / 12) {
    why.push_back("ell > r^(2/3)/12: glued");
    ConstructionSpec s = spec;
    s.regime = Regime::glued;
    return done(build_curve(s));
  }
  if (spec.ell <= c.trivial_K * r3) {
    why.push_back("ell <= trivial_K r^(1/3): one lattice point");
    ConstructionSpec s = spec;
    s.regime = Regime::trivial;
    return done(build_curve(s));
  }
  ConstructionSpec s = spec;
  s.regime = Regime::rational;
  s.a.reset();
  s.q.reset();
  if (auto res = attempt(s)) return done(*res);
  s.regime = Regime::irrational;
  if (auto res = attempt(s)) return done(*res);
  for (const auto& cv : rational_witnesses(spec)) {
    s.regime = Regime::rational;
    s.a = cv.a;
    s.q = cv.q;
    why.push_back("trying the close approximation " + fmt(cv.a) + "/" + fmt(cv.q));
    if (auto res = attempt(s)) return done(*res);
  }
  why.push_back("no theorem applies: one lattice point");
  s = spec;
  s.regime = Regime::trivial;
  return done(build_curve(s));
}

}  // namespace flatarc
