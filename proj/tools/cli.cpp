#include "cli.hpp"

#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "flatarc/flatarc.h"

namespace flatarc_cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Status from the library, carried to the exit code.
struct LibError {
  int code;
};

struct Owned {
  char* p = nullptr;
  ~Owned() { fa_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void check(fa_status s) {
  if (s != FA_OK) throw LibError{static_cast<int>(s)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ss.str();
}

// Temporary file in the same directory, then rename.
void write_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp + ": " + std::strerror(errno));
    out << data;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw IoError("error writing " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    int e = errno;
    std::remove(tmp.c_str());
    throw IoError("cannot rename to " + path + ": " + std::strerror(e));
  }
}

void emit(std::ostream& out, const std::string& path, const std::string& data) {
  if (path.empty() || path == "-")
    out << data;
  else
    write_atomic(path, data);
}

struct ProfileHandle {
  fa_profile* p = nullptr;
  ~ProfileHandle() { fa_profile_free(p); }
};

// A name (paper, desk) or a path to a JSON profile; the environment
// variable FLATARC_PROFILE supplies the default.
void load_profile(std::string spec, ProfileHandle& h) {
  if (spec.empty()) {
    const char* env = std::getenv("FLATARC_PROFILE");
    spec = env && *env ? env : "desk";
  }
  if (spec == "paper" || spec == "desk")
    check(fa_profile_named(spec.c_str(), &h.p));
  else
    check(fa_profile_from_json(read_file(spec).c_str(), &h.p));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double eval_length(const std::string& expr, double r) {
  static const std::regex pow_re(R"(^\s*(?:([0-9.eE+-]+)\s*\*?\s*)?r\s*\^\s*\(?\s*([0-9.eE+-]+)(?:\s*/\s*([0-9]+))?\s*\)?\s*$)");
  std::smatch m;
  auto number = [](const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number " + s);
    return v;
  };
  if (std::regex_match(expr, m, pow_re)) {
    double c = m[1].matched ? number(m[1].str()) : 1.0;
    double e = number(m[2].str());
    if (m[3].matched) e /= number(m[3].str());
    return c * std::pow(r, e);
  }
  std::string t = expr;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
  if (t.empty()) throw std::invalid_argument("empty length expression");
  return number(t);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice points on flat convex arcs", "flatarc"};
  app.require_subcommand(1);

  // delta
  std::string d_w, d_x;
  auto* delta = app.add_subcommand("delta", "delta(w, x) = min over q of q x + ||q w|| and its minimizer");
  delta->add_option("--w", d_w, "slope: rat:p/q, quad:(p+s*sqrt(d))/q, cf:[...], dec:...@N")->required();
  delta->add_option("--x", d_x, "rational x > 0")->required();

  // farey count
  auto* farey = app.add_subcommand("farey", "Farey window counts");
  farey->require_subcommand(1);
  std::int64_t f_a = 0, f_q = 1, f_M = 1;
  std::string f_z, f_mode = "sieve", f_out;
  auto* fcount = farey->add_subcommand("count", "count h/k, k <= M, in the window (a/q, a/q + z/(Mq))");
  fcount->add_option("--a", f_a)->required();
  fcount->add_option("--q", f_q)->required();
  fcount->add_option("--M", f_M)->required();
  fcount->add_option("--z", f_z)->required();
  fcount->add_option("--mode", f_mode)->check(CLI::IsMember({"sieve", "enumerate"}));
  fcount->add_option("--out", f_out, "CSV path (default stdout)");

  // construct
  std::string c_regime = "auto", c_w, c_ell, c_profile, c_out, c_svg, c_report;
  double c_r = 0;
  auto* construct = app.add_subcommand("construct", "build a curve with many lattice points");
  construct->add_option("--regime", c_regime)
      ->check(CLI::IsMember({"auto", "farey", "irrational", "rational", "very_near", "near", "glued", "trivial"}));
  construct->add_option("--w", c_w, "initial slope")->required();
  construct->add_option("--ell", c_ell, "length: number or c*r^e")->required();
  construct->add_option("--r", c_r, "minimal radius of curvature")->required();
  construct->add_option("--profile", c_profile, "paper, desk or a JSON file (default $FLATARC_PROFILE or desk)");
  construct->add_option("--out", c_out, "curve file")->required();
  construct->add_option("--svg", c_svg, "SVG rendering");
  construct->add_option("--report", c_report, "JSON-lines report path (default stdout)");

  // verify
  std::string v_curve, v_w, v_format = "jsonl", v_out;
  auto* verify = app.add_subcommand("verify", "count lattice points on a curve file and compare with the bounds");
  verify->add_option("--curve", v_curve)->required();
  verify->add_option("--w", v_w, "slope override (default: the file's metadata)");
  verify->add_option("--format", v_format)->check(CLI::IsMember({"jsonl", "csv"}));
  verify->add_option("--out", v_out);

  // scan
  std::string s_w, s_out;
  double s_alpha = 0.5, s_rmin = 0, s_rmax = 0;
  int s_points = 0;
  auto* scan = app.add_subcommand("scan", "exponent of the count estimate along ell = r^alpha");
  scan->add_option("--w", s_w)->required();
  scan->add_option("--alpha", s_alpha)->required();
  scan->add_option("--r-min", s_rmin)->required();
  scan->add_option("--r-max", s_rmax)->required();
  scan->add_option("--points", s_points, "log-spaced values added to the convergent cubes")->required();
  scan->add_option("--out", s_out);

  // render
  std::string r_curve, r_out;
  auto* render = app.add_subcommand("render", "curve file to SVG");
  render->add_option("--curve", r_curve)->required();
  render->add_option("--out", r_out)->required();

  if (args.empty()) {
    err << app.help();
    return kUsage;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) {
      if (sub->parsed()) {
        err << sub->help();
        return kUsage;
      }
    }
    err << app.help();
    return kUsage;
  }

  try {
    if (delta->parsed()) {
      Owned s;
      check(fa_delta(d_w.c_str(), d_x.c_str(), &s.p));
      out << s.str() << "\n";
    } else if (fcount->parsed()) {
      fa_farey_counts c{};
      check(fa_farey_count(f_a, f_q, f_M, f_z.c_str(), f_mode.c_str(), &c));
      std::string csv =
          "# count_strict: reduced h/k with k <= M and a/q < h/k < a/q + z/(Mq); count_closed: same with endpoints; "
          "bound: zM/(pi^2 q); satisfied: count_strict >= bound\n"
          "a,q,M,z,count_strict,count_closed,bound,satisfied\n";
      csv += std::to_string(f_a) + "," + std::to_string(f_q) + "," + std::to_string(f_M) + "," + f_z + "," +
             std::to_string(c.count_strict) + "," + std::to_string(c.count_closed) + "," + fmt(c.bound) + "," +
             (c.satisfied ? "true" : "false") + "\n";
      emit(out, f_out, csv);
    } else if (construct->parsed()) {
      if (!(c_r > 0) || !std::isfinite(c_r)) throw std::invalid_argument("--r must be a positive number");
      double ell = eval_length(c_ell, c_r);
      ProfileHandle prof;
      load_profile(c_profile, prof);
      fa_construction* h = nullptr;
      check(fa_construct(c_w.c_str(), ell, c_r, c_regime.c_str(), prof.p, &h));
      std::unique_ptr<fa_construction, void (*)(fa_construction*)> hold(h, fa_construction_free);
      Owned text, report;
      check(fa_construction_curve_text(h, &text.p));
      check(fa_construction_report(h, &report.p));
      write_atomic(c_out, text.str());
      if (!c_svg.empty()) {
        Owned svg;
        check(fa_construction_svg(h, &svg.p));
        write_atomic(c_svg, svg.str());
      }
      emit(out, c_report, report.str());
      int ok = 0;
      check(fa_construction_satisfied(h, &ok));
      if (!ok) err << "warning: some claims of the construction do not hold; see the report\n";
    } else if (verify->parsed()) {
      fa_curve* h = nullptr;
      check(fa_curve_parse(read_file(v_curve).c_str(), &h));
      std::unique_ptr<fa_curve, void (*)(fa_curve*)> hold(h, fa_curve_free);
      Owned s;
      check(fa_curve_verify(h, v_w.empty() ? nullptr : v_w.c_str(), v_format.c_str(), &s.p));
      emit(out, v_out, s.str());
    } else if (scan->parsed()) {
      Owned s;
      check(fa_scan(s_w.c_str(), s_alpha, s_rmin, s_rmax, s_points, &s.p));
      emit(out, s_out, s.str());
    } else if (render->parsed()) {
      fa_curve* h = nullptr;
      check(fa_curve_parse(read_file(r_curve).c_str(), &h));
      std::unique_ptr<fa_curve, void (*)(fa_curve*)> hold(h, fa_curve_free);
      Owned s;
      check(fa_curve_svg(h, &s.p));
      write_atomic(r_out, s.str());
    }
  } catch (const LibError& e) {
    std::string kind = fa_last_error_kind();
    err << "error (" << kind << "): " << fa_last_error() << "\n";
    if (e.code == FA_ERR_PRECISION && fa_last_extra_digits() > 0)
      err << "about " << fa_last_extra_digits() << " more certified digits are needed\n";
    if (e.code == FA_ERR_INVALID) {
      for (auto* sub : app.get_subcommands())
        if (sub->parsed()) err << sub->help();
    }
    return e.code;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: number out of range: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace flatarc_cli
