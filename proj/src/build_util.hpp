#pragma once

#include <cmath>
#include <string>

#include "flatarc/constructions.hpp"

namespace flatarc::detail {

// Radius envelope [rho/250, 300 max(rho1, rho2)] over every join, widened
// by circle arcs.
struct Envelope {
  long double lo = INFINITY;
  long double hi = 0;
  void add(const ProfileParams& p);
  void add_radius(long double R);
};

// Joins A to B with local slopes alpha, beta (in the AB frame). rho1 and
// rho2 are chosen so the endpoint radii equal R_A and R_B; rho is the
// smallest of rho_pref, rho1, rho2, raised into the |AB| window if needed.
SplineSegment join_with_radii(Point A, Point B, long double alpha, long double beta, long double R_A,
                              long double R_B, long double rho_pref, bool lattice_A, bool lattice_B,
                              Envelope& env);

// tan(angle(t) - angle(s)) = (t - s)/(1 + t s), evaluated exactly.
long double local_tan(const Rational& t, const Rational& s);

struct StartFix {
  bool extended = false;
  bool trimmed = false;
  long double arc_angle = 0;
  long double arc_length = 0;
  long double arc_radius = 0;
  std::size_t deleted = 0;
};

// Makes the curve start with slope w. cmp is the sign of w - (initial
// tangent), decided exactly by the caller. cmp < 0 prepends a circle arc with
// the first segment's endpoint radius; cmp > 0 trims the start.
StartFix fix_initial_slope(PiecewiseCurve& c, const SlopeValue& w, int cmp, Envelope& env);

void add_claim(ConstructionResult& res, const std::string& name, const std::string& kind, long double lo,
               long double hi, long double measured);
void add_check(ConstructionResult& res, const std::string& name, bool ok, long double lo, long double hi,
               long double measured);

// Summary and lattice count, then the initial slope and envelope claims.
void measure(ConstructionResult& res, long double w, const Envelope& env);

std::string fmt(long double v);
std::string fmt(const Integer& v);
Rational exact(long double v);
long double ld(const Rational& v);
long double ld(const Integer& v);
// sign(w - t), exact.
int compare_slope(const SlopeValue& w, const Rational& t);

// 1/t for t > 0.
CertifiedReal inverse(const CertifiedReal& t);
Integer ceil(const CertifiedReal& t);

// (a, q) from the spec or the minimizer of delta(w, ell/r), with the
// selection recorded in the result.
std::pair<Integer, Integer> rational_pair(const ConstructionSpec& spec, ConstructionResult& res);

constexpr long double kSlopeTol = 1e-15L;

}  // namespace flatarc::detail

namespace flatarc::detail {

// Farey-tangent curve data shared by the Farey and irrational builders.
struct FareyCore {
  PiecewiseCurve curve;
  std::vector<FareyFraction> fractions;
  Rational first_tangent;
  long double R = 0;                   // common junction radius M^3
  long double ratio_lo = 0, ratio_hi = 0;    // alpha/beta over the joins
  long double window_lo = 0, window_hi = 0;  // |AB|/(beta M^3)
  Envelope env;
};

FareyCore farey_core(const Rational& lo, const Rational& hi, std::int64_t M);

}  // namespace flatarc::detail
