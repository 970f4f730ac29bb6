#include "flatarc/curve_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace flatarc {

namespace {

std::string hex(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%La", v);
  return buf;
}

std::string dec(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

long double parse_real(const std::string& tok) {
  char* end = nullptr;
  long double v = std::strtold(tok.c_str(), &end);
  if (tok.empty() || end != tok.c_str() + tok.size()) throw InvalidInput("bad number in curve file: '" + tok + "'");
  return v;
}

bool parse_flag(const std::string& tok) {
  if (tok == "0") return false;
  if (tok == "1") return true;
  throw InvalidInput("bad flag in curve file: '" + tok + "'");
}

}  // namespace

std::string write_curve(const CurveFile& f) {
  std::ostringstream out;
  out << "flatarc-curve 1\n";
  for (const auto& [k, v] : f.meta) out << "meta " << k << ' ' << v << '\n';
  const auto& segs = f.curve.segments();
  out << "segments " << segs.size() << '\n';
  for (const auto& s : segs) {
    if (s.is_spline()) {
      const auto& sp = s.spline();
      const auto& p = sp.profile().params();
      out << "spline " << hex(sp.A().x) << ' ' << hex(sp.A().y) << ' ' << hex(sp.B().x) << ' ' << hex(sp.B().y) << ' '
          << hex(p.rho) << ' ' << hex(p.rho1) << ' ' << hex(p.rho2) << ' ' << hex(p.alpha) << ' ' << hex(p.beta)
          << ' ' << hex(sp.s0()) << ' ' << hex(sp.s1()) << ' ' << sp.lattice_A() << ' ' << sp.lattice_B() << '\n';
    } else {
      const auto& a = s.arc();
      out << "arc " << hex(a.Q().x) << ' ' << hex(a.Q().y) << ' ' << hex(a.theta_q()) << ' ' << hex(a.t0()) << ' '
          << hex(a.t1()) << ' ' << hex(a.R()) << ' ' << a.lattice_Q() << '\n';
    }
  }
  for (const auto& p : f.curve.designated()) out << "lattice " << p.x << ' ' << p.y << '\n';
  out << "end\n";
  return out.str();
}

CurveFile read_curve(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "flatarc-curve 1") throw InvalidInput("not a version 1 curve file");
  CurveFile f;
  long long declared = -1;
  std::set<LatticePoint> listed;
  bool ended = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    std::vector<std::string> tok;
    if (kind == "meta") {
      std::string key, rest;
      ls >> key;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      f.meta[key] = rest;
      continue;
    }
    for (std::string t; ls >> t;) tok.push_back(t);
    if (kind == "segments") {
      if (tok.size() != 1) throw InvalidInput("bad segments line");
      declared = std::stoll(tok[0]);
    } else if (kind == "spline") {
      if (tok.size() != 13) throw InvalidInput("spline line needs 13 fields");
      Point A{parse_real(tok[0]), parse_real(tok[1])}, B{parse_real(tok[2]), parse_real(tok[3])};
      long double L = std::sqrt((B.x - A.x) * (B.x - A.x) + (B.y - A.y) * (B.y - A.y));
      ProfileParams p{parse_real(tok[4]), parse_real(tok[5]), parse_real(tok[6]), 0, L, parse_real(tok[7]),
                      parse_real(tok[8])};
      SplineSegment s(A, B, build_profile(p), parse_flag(tok[11]), parse_flag(tok[12]));
      long double s0 = parse_real(tok[9]), s1 = parse_real(tok[10]);
      if (s0 != 0 || s1 != s.chord()) s = s.trimmed(s0, s1);
      f.curve.append(s);
    } else if (kind == "arc") {
      if (tok.size() != 7) throw InvalidInput("arc line needs 7 fields");
      f.curve.append(ArcSegment({parse_real(tok[0]), parse_real(tok[1])}, parse_real(tok[2]), parse_real(tok[3]),
                                parse_real(tok[4]), parse_real(tok[5]), parse_flag(tok[6])));
    } else if (kind == "lattice") {
      if (tok.size() != 2) throw InvalidInput("lattice line needs 2 fields");
      listed.insert({std::stoll(tok[0]), std::stoll(tok[1])});
    } else if (kind == "end") {
      ended = true;
      break;
    } else {
      throw InvalidInput("unknown curve file line: '" + kind + "'");
    }
  }
  if (!ended) throw InvalidInput("curve file has no end line");
  if (declared != static_cast<long long>(f.curve.segments().size()))
    throw InvalidInput("segment count does not match the segments line");
  auto derived = f.curve.designated();
  if (std::set<LatticePoint>(derived.begin(), derived.end()) != listed)
    throw InvalidInput("listed lattice points differ from the segment endpoints");
  return f;
}

std::string render_svg(const PiecewiseCurve& c, const std::vector<LatticePoint>& marks, int per_segment) {
  const double W = 1000, H = 400, pad = 20;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  auto pts = sample_curve(c, per_segment);
  if (pts.size() < 2) {
    out << "</svg>\n";
    return out.str();
  }
  long double x0 = pts.front().x, y0 = pts.front().y, x1 = pts.back().x, y1 = pts.back().y;
  long double k = x1 == x0 ? 0 : (y1 - y0) / (x1 - x0);
  auto resid = [&](long double x, long double y) { return y - (y0 + k * (x - x0)); };
  long double rmin = 0, rmax = 0;
  for (const auto& p : pts) {
    rmin = std::min(rmin, resid(p.x, p.y));
    rmax = std::max(rmax, resid(p.x, p.y));
  }
  long double xs = x1 == x0 ? 1 : (W - 2 * pad) / (x1 - x0);
  long double ys = rmax == rmin ? 1 : (H - 2 * pad) / (rmax - rmin);
  auto X = [&](long double x) { return static_cast<double>(pad + (x - x0) * xs); };
  auto Y = [&](long double x, long double y) { return static_cast<double>(H - pad - (resid(x, y) - rmin) * ys); };
  out << "<!-- detrended: vertical axis is y minus the chord, scaled by " << static_cast<double>(ys) << " -->\n";
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (const auto& p : pts) out << X(p.x) << ',' << Y(p.x, p.y) << ' ';
  out << "\"/>\n";
  for (const auto& m : marks) {
    auto mx = static_cast<long double>(m.x), my = static_cast<long double>(m.y);
    out << "<circle cx=\"" << X(mx) << "\" cy=\"" << Y(mx, my) << "\" r=\"3\" fill=\"red\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string samples_csv(const PiecewiseCurve& c, int per_segment) {
  std::ostringstream out;
  out << "x,y,slope,rad\n";
  for (const auto& p : sample_curve(c, per_segment))
    out << dec(p.x) << ',' << dec(p.y) << ',' << dec(p.slope) << ',' << dec(p.rad) << '\n';
  return out.str();
}

}  // namespace flatarc
