#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatarc/exact_arith.hpp"
#include "flatarc/farey.hpp"
#include "flatarc/geometry.hpp"

namespace flatarc {

// Named constants of the constructions. The `paper` profile holds the
// published values, `desk` holds reduced ones that give visible point counts
// for r up to about 1e9.
struct Constants {
  std::string name;
  long double C_farey = 30;     // Farey window lemma constant
  long double C = 1;            // M = floor(C [r^(1/3)])
  long double irr_ell = 1;      // irrational regime: ell > irr_ell r^(1/3)
  long double interval_div = 1; // I = [a/q, a/q + ell/(interval_div r)]
  long double K4 = 1;           // rational threshold q < K4 r^(2/3)/ell
  long double k = 1;            // Omega = q [k r/(q^2 ell)]
  long double omega_min = 1;    // Omega > omega_min q
  long double rat_ell = 1;      // rational regimes: ell > rat_ell r^(1/3)
  long double very_near_div = 25;  // very near: |w - a/q| <= ell/(very_near_div r)
  long double trivial_K = 1;    // auto: ell <= trivial_K r^(1/3) builds one point
  long double glue_radius = 500;   // sub-curves built at radius glue_radius r
  long double glue_len_div = 24;   // sub-curve length (glue_radius r)^(2/3)/glue_len_div
  long double glue_rho = 250;      // connector rho = glue_rho r
  long double glue_turn = 1;       // chord turns by glue_turn r^(-1/3) at each end
  long double glue_gap = 1;        // connector chord glue_gap r^(2/3)
  long double glue_count = 0;      // reported: count >= glue_count ell r^(-1/3)

  // Irrational claim coefficient C^2/(8 pi^2 interval_div); 1/(3200 pi^2 C)
  // for the paper values.
  long double irr_count() const;
  // 1/k^3, which is (800 C^4)^(-6) for the paper values.
  long double count_factor() const { return 1 / (k * k * k); }
};

Constants paper_constants();
Constants desk_constants();
// "paper" or "desk".
Constants named_constants(const std::string& name);
// JSON object with every constant, or {"inherit": "desk", ...} overriding
// some of them. Unknown keys are rejected.
Constants constants_from_json(const std::string& text);
std::string constants_to_json(const Constants& c);

// `rational` picks very near or near from the distance |w - a/q|.
enum class Regime { automatic, trivial, farey, irrational, rational, very_near, near, glued };
std::string regime_name(Regime r);
Regime parse_regime(const std::string& s);

struct ConstructionSpec {
  SlopeValue w;
  long double ell = 0;
  long double r = 0;
  Constants constants;
  Regime regime = Regime::automatic;
  // Rational regimes: defaults to the minimizer of delta(w, ell/r).
  std::optional<Integer> a, q;
};

// kind: "claim" for the four headline claims, "check" for proof-internal
// inequalities evaluated with the profile constants, "paper" for published
// statements that are recorded but not required at desk scale.
struct Claim {
  std::string name;
  std::string kind;
  long double lo = 0;   // claimed range [lo, hi]
  long double hi = 0;
  long double measured = 0;
  bool satisfied = false;
};

struct ConstructionResult {
  std::string regime;
  std::string profile;
  std::vector<std::string> rationale;
  std::map<std::string, std::string> params;
  PiecewiseCurve curve;
  CurveSummary summary;
  LatticeCount count;
  std::vector<Claim> claims;
  std::vector<std::uint64_t> piece_counts;  // glued builds

  // Throws InvalidInput for an unknown name.
  const Claim& claim(const std::string& name) const;
  // Every claim and check holds; paper statements are ignored.
  bool satisfied() const;
};

// Farey-tangent curve through the lattice points built from F_M on I.
ConstructionResult build_farey_curve(const Rational& lo, const Rational& hi, std::int64_t M,
                                     const Constants& c = desk_constants());

ConstructionResult build_irrational_curve(const ConstructionSpec& spec);
ConstructionResult build_rational_curve_very_near(const ConstructionSpec& spec);
ConstructionResult build_rational_curve_near(const ConstructionSpec& spec);
ConstructionResult build_glued_curve(const ConstructionSpec& spec);
// One circle arc of radius r from the origin with initial slope w.
ConstructionResult build_trivial_curve(const ConstructionSpec& spec);
// Dispatches on spec.regime; `automatic` applies the regime selection and
// records the reasons in the result.
ConstructionResult build_curve(const ConstructionSpec& spec);

// Modular inverse of a mod q in [1, q].
Integer mod_inverse(const Integer& a, const Integer& q);

}  // namespace flatarc
