#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatarc/exact_arith.hpp"
#include "flatarc/geometry.hpp"

namespace flatarc {

// 2 ell r^(-1/3) + 2. Needs ell, r >= 1.
long double local_upper_bound(long double ell, long double r);

// 2.04 q ell |w - a/q| + 3.2 q ell^2/r + 2. Throws HypothesisViolated unless
// 3 < ell <= r/3.
long double geometric_upper_bound(const SlopeValue& w, long double ell, long double r, const Integer& a,
                                  const Integer& q);

struct GeometricBound {
  long double value = 0;
  Integer a, q;  // the minimizer of delta(w, ell/r), a = [q w]
};
GeometricBound best_geometric_bound(const SlopeValue& w, long double ell, long double r);

// Vertices (u, v), (u, v + h), (u + k, v + s k), (u + k, v + h + s k) with
// side slope s = a/q.
struct Parallelogram {
  long double u = 0, v = 0;
  long double h = 0;  // vertical side
  long double k = 0;  // horizontal extent
  Integer a, q;
  long double slope() const;
  // Inside up to an absolute slack.
  bool contains(Point p, long double slack = 0) const;
};

// The rational parallelogram around a curve of length ell and radius at
// least r, built from the start point and initial slope. h is
// 1.02 ell |w - a/q| + 1.6 ell^2/r and k is 1.02 ell. The length and the
// radius default to the curve's own. Throws HypothesisViolated unless
// 3 < ell <= r/3; throws Error if a sampled curve point falls outside.
Parallelogram bounding_parallelogram(const PiecewiseCurve& c, const Integer& a, const Integer& q,
                                     std::optional<long double> ell = std::nullopt,
                                     std::optional<long double> r = std::nullopt);

// Number of integers j in [v q - a u, (v + h) q - a u]: the lines
// y = (a/q) x + j/q meeting p that can carry a lattice point. Exact in the
// binary values of u, v, h.
std::int64_t lines_through_parallelogram(const Parallelogram& p, const Integer& a, const Integer& q);

// Largest n with lattice steps (a_i, b_i), i < n, a_i >= 1, strictly
// increasing slopes b_i/a_i in [w, w + ell/r] and sum a_i <= ell. Throws
// SearchBudgetExceeded when more than `budget` candidate slopes would be
// examined.
std::int64_t slope_chain_oracle(const SlopeValue& w, std::int64_t ell, long double r,
                                std::int64_t budget = 20'000'000);

enum class Branch { curvature_limited, diophantine_limited };
std::string branch_name(Branch b);

struct Estimate {
  long double value = 0;  // min(ell r^(-1/3), ell delta(w, ell/r))
  Branch branch = Branch::curvature_limited;
  CertifiedReal delta;
  Integer argmin_q;
  // Convergent q_j <= r^(1/3) < q_(j+1) and min(r^(-1/3), ||q_j w|| + q_j ell/r).
  Integer q_j;
  long double shortcut = 0;
  // min(r^(-1/3), delta) <= shortcut <= 10 min(r^(-1/3), delta).
  bool sandwich = false;
};
Estimate estimator(const SlopeValue& w, long double ell, long double r);

struct ScanPoint {
  long double r = 0;
  long double exponent = 0;  // log(estimate)/log r
  Branch branch = Branch::curvature_limited;
  long double running_max = 0;
  long double running_min = 0;
};
// ell = r^alpha at every r of the grid. Needs 1/3 < alpha < 2/3 and an
// increasing grid of r > 1.
std::vector<ScanPoint> exponent_scan(const SlopeValue& w, long double alpha, const std::vector<long double>& r_grid);

// Cubes q_j^3 of the convergent denominators in [r_min, r_max], merged with
// `filler` log-spaced values.
std::vector<long double> convergent_grid(const SlopeValue& w, long double r_min, long double r_max, int filler);

// alpha - 1/3 and min(alpha - 1/3, 2 alpha - 1 + (1 - alpha)/beta).
long double limsup_target(long double alpha);
long double liminf_target(long double alpha, long double beta);

struct BoundReport {
  std::string w;
  long double ell = 0, r = 0;
  long double local_bound = 0;
  std::optional<GeometricBound> geometric;  // only when 3 < ell <= r/3
  long double estimator = 0;
  Branch branch = Branch::curvature_limited;
  std::optional<std::int64_t> measured;
  std::size_t ambiguous = 0;
  long double tight_ratio = 0;  // measured / min(bounds)
  // measured <= floor of every applicable bound.
  bool consistent = true;
};
BoundReport bound_report(const SlopeValue& w, long double ell, long double r,
                         std::optional<std::int64_t> measured = std::nullopt);
// Slope, length and radius from the curve; measured = lattice points found
// by the scan.
BoundReport verify_curve(const PiecewiseCurve& c, const SlopeValue& w);

}  // namespace flatarc
