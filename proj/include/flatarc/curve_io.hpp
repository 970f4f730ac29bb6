#pragma once

#include <map>
#include <string>
#include <vector>

#include "flatarc/geometry.hpp"

namespace flatarc {

// A curve plus free-form metadata (slope text, regime, constants profile).
struct CurveFile {
  PiecewiseCurve curve;
  std::map<std::string, std::string> meta;
};

// Versioned text format. Reals are written as hexadecimal floats so a
// round trip rebuilds the same curve bit for bit:
//
//   flatarc-curve 1
//   meta <key> <value>
//   segments <n>
//   spline <Ax> <Ay> <Bx> <By> <rho> <rho1> <rho2> <alpha> <beta> <s0> <s1> <latA> <latB>
//   arc <Qx> <Qy> <theta_q> <t0> <t1> <R> <latQ>
//   lattice <x> <y>
//   end
std::string write_curve(const CurveFile& f);
// Throws InvalidInput on malformed text.
CurveFile read_curve(const std::string& text);

// Polyline of the curve minus its chord (flat curves are invisible
// otherwise), with markers at the given lattice points.
std::string render_svg(const PiecewiseCurve& c, const std::vector<LatticePoint>& marks, int per_segment = 200);

// Header "x,y,slope,rad" then one sample per line.
std::string samples_csv(const PiecewiseCurve& c, int per_segment);

}  // namespace flatarc
