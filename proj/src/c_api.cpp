#include "flatarc/flatarc.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "flatarc/bounds.hpp"
#include "flatarc/constructions.hpp"
#include "flatarc/curve_io.hpp"
#include "flatarc/farey.hpp"

using nlohmann::json;
using namespace flatarc;

struct fa_profile {
  Constants c;
};

struct fa_construction {
  std::string w;
  double ell = 0, r = 0;
  std::string requested;
  Constants constants;
  ConstructionResult res;
};

struct fa_curve {
  CurveFile file;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_kind;
thread_local int last_digits = 0;

void clear_error() {
  last_error.clear();
  last_kind.clear();
  last_digits = 0;
}

fa_status fail(fa_status s, const char* kind, const std::string& what) {
  last_error = what;
  last_kind = kind;
  return s;
}

// Runs f and maps library exceptions onto status codes.
template <class F>
fa_status guard(F&& f) {
  clear_error();
  try {
    f();
    return FA_OK;
  } catch (const TooFewFareyFractions& e) {
    return fail(FA_ERR_HYPOTHESIS, "TooFewFareyFractions", e.what());
  } catch (const HypothesisViolated& e) {
    return fail(FA_ERR_HYPOTHESIS, "HypothesisViolated", e.what());
  } catch (const PlacementInfeasible& e) {
    return fail(FA_ERR_HYPOTHESIS, "PlacementInfeasible", e.what());
  } catch (const SmoothingWindowInfeasible& e) {
    return fail(FA_ERR_HYPOTHESIS, "SmoothingWindowInfeasible", e.what());
  } catch (const PrecisionExhausted& e) {
    last_digits = e.extra_digits();
    return fail(FA_ERR_PRECISION, "PrecisionExhausted", e.what());
  } catch (const ToleranceUnresolvable& e) {
    return fail(FA_ERR_PRECISION, "ToleranceUnresolvable", e.what());
  } catch (const SearchBudgetExceeded& e) {
    return fail(FA_ERR_BUDGET, "SearchBudgetExceeded", e.what());
  } catch (const InvalidInput& e) {
    return fail(FA_ERR_INVALID, "InvalidInput", e.what());
  } catch (const json::exception& e) {
    return fail(FA_ERR_INVALID, "InvalidInput", e.what());
  } catch (const std::bad_alloc&) {
    return fail(FA_ERR_INTERNAL, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return fail(FA_ERR_INTERNAL, "Error", e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw InvalidInput(std::string(what) + " is null");
}

std::string num(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
  return buf;
}

json finite(long double v) {
  if (std::isfinite(v)) return static_cast<double>(v);
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

json bound_json(const BoundReport& rep) {
  json j;
  j["type"] = "bounds";
  j["w"] = rep.w;
  j["ell"] = finite(rep.ell);
  j["r"] = finite(rep.r);
  j["local_bound"] = finite(rep.local_bound);
  if (rep.geometric) {
    j["geometric_bound"] = finite(rep.geometric->value);
    j["geometric_a"] = rep.geometric->a.get_str();
    j["geometric_q"] = rep.geometric->q.get_str();
  } else {
    j["geometric_bound"] = nullptr;
  }
  j["estimator"] = finite(rep.estimator);
  j["branch"] = branch_name(rep.branch);
  if (rep.measured) {
    j["measured"] = *rep.measured;
    j["ambiguous"] = rep.ambiguous;
    j["tight_ratio"] = finite(rep.tight_ratio);
    j["consistent"] = rep.consistent;
  } else {
    j["measured"] = nullptr;
  }
  return j;
}

const char* kBoundHeader =
    "# ell: length bound, r: minimal radius of curvature, local_bound: 2 ell r^(-1/3) + 2, "
    "geometric_bound: 2.04 q ell |w - a/q| + 3.2 q ell^2/r + 2 at the minimizer a/q of delta(w, ell/r), "
    "estimator: min(ell r^(-1/3), ell delta(w, ell/r)), measured: lattice points found on the curve\n";

std::string bound_csv(const BoundReport& rep) {
  std::string out = kBoundHeader;
  out += "w,ell,r,local_bound,geometric_bound,geometric_a,geometric_q,estimator,branch,measured,ambiguous,"
         "tight_ratio,consistent\n";
  out += rep.w + "," + num(rep.ell) + "," + num(rep.r) + "," + num(rep.local_bound) + ",";
  if (rep.geometric)
    out += num(rep.geometric->value) + "," + rep.geometric->a.get_str() + "," + rep.geometric->q.get_str() + ",";
  else
    out += ",,,";
  out += num(rep.estimator) + "," + branch_name(rep.branch) + ",";
  if (rep.measured)
    out += std::to_string(*rep.measured) + "," + std::to_string(rep.ambiguous) + "," + num(rep.tight_ratio) + "," +
           (rep.consistent ? "true" : "false");
  else
    out += ",,,";
  return out + "\n";
}

json claim_json(const Claim& c) {
  return json{{"type", "claim"},  {"name", c.name},         {"kind", c.kind},
              {"lo", finite(c.lo)}, {"hi", finite(c.hi)}, {"measured", finite(c.measured)},
              {"satisfied", c.satisfied}};
}

std::string lines(const std::vector<json>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.dump() + "\n";
  return out;
}

}  // namespace

extern "C" {

const char* fa_version(void) { return "1.0.0"; }
const char* fa_last_error(void) { return last_error.c_str(); }
const char* fa_last_error_kind(void) { return last_kind.c_str(); }
int fa_last_extra_digits(void) { return last_digits; }
void fa_string_free(char* s) { std::free(s); }

fa_status fa_slope_normalize(const char* w, char** out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    *out = dup(SlopeValue::parse(w).str());
  });
}

fa_status fa_delta(const char* w, const char* x, char** out) {
  return guard([&] {
    need(w, "w");
    need(x, "x");
    need(out, "out");
    DeltaResult d = delta(SlopeValue::parse(w), Rational::parse(x));
    *out = dup(d.value.str() + " q=" + d.argmin_q.get_str());
  });
}

fa_status fa_farey_count(int64_t a, int64_t q, int64_t M, const char* z, const char* mode, fa_farey_counts* out) {
  return guard([&] {
    need(z, "z");
    need(out, "out");
    CountMode m;
    std::string ms = mode ? mode : "sieve";
    if (ms == "sieve")
      m = CountMode::sieve;
    else if (ms == "enumerate")
      m = CountMode::enumerate;
    else
      throw InvalidInput("mode must be sieve or enumerate, not " + ms);
    FareyWindow win{a, q, M, Rational::parse(z)};
    win.validate();
    FareyLowerBound lb = lower_bound_check(win, Rational(30));
    out->count_strict = count_window(win, m);
    out->count_closed = count_window_closed(win);
    out->bound = static_cast<double>(lb.bound.to_long_double());
    out->satisfied = lb.satisfied;
    out->hypothesis_met = lb.hypothesis_met;
    if (out->count_strict != lb.count) throw Error("internal: count modes disagree");
  });
}

fa_status fa_farey_size(int64_t M, uint64_t* out) {
  return guard([&] {
    need(out, "out");
    require(M >= 1, "M must be positive");
    *out = farey_size(M);
  });
}

fa_status fa_profile_named(const char* name, fa_profile** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = new fa_profile{named_constants(name)};
  });
}

fa_status fa_profile_from_json(const char* text, fa_profile** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = new fa_profile{constants_from_json(text)};
  });
}

fa_status fa_profile_to_json(const fa_profile* p, char** out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    *out = dup(constants_to_json(p->c));
  });
}

void fa_profile_free(fa_profile* p) { delete p; }

fa_status fa_construct(const char* w, double ell, double r, const char* regime, const fa_profile* profile,
                       fa_construction** out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    *out = nullptr;
    require(std::isfinite(ell) && std::isfinite(r), "ell and r must be finite");
    auto c = std::make_unique<fa_construction>();
    c->w = w;
    c->ell = ell;
    c->r = r;
    c->requested = regime ? regime : "auto";
    c->constants = profile ? profile->c : desk_constants();
    ConstructionSpec spec{SlopeValue::parse(w), ell, r, c->constants, parse_regime(c->requested), {}, {}};
    c->res = build_curve(spec);
    *out = c.release();
  });
}

void fa_construction_free(fa_construction* c) { delete c; }

fa_status fa_construction_regime(const fa_construction* c, char** out) {
  return guard([&] {
    need(c, "construction");
    need(out, "out");
    *out = dup(c->res.regime);
  });
}

fa_status fa_construction_counts(const fa_construction* c, uint64_t* certified, uint64_t* candidates) {
  return guard([&] {
    need(c, "construction");
    if (certified) *certified = c->res.count.certified;
    if (candidates) *candidates = c->res.count.candidates;
  });
}

fa_status fa_construction_satisfied(const fa_construction* c, int* out) {
  return guard([&] {
    need(c, "construction");
    need(out, "out");
    *out = c->res.satisfied() ? 1 : 0;
  });
}

fa_status fa_construction_curve_text(const fa_construction* c, char** out) {
  return guard([&] {
    need(c, "construction");
    need(out, "out");
    CurveFile f;
    f.curve = c->res.curve;
    f.meta["w"] = SlopeValue::parse(c->w).str();
    f.meta["ell"] = num(c->ell);
    f.meta["r"] = num(c->r);
    f.meta["regime"] = c->res.regime;
    f.meta["profile"] = c->res.profile;
    *out = dup(write_curve(f));
  });
}

fa_status fa_construction_report(const fa_construction* c, char** out) {
  return guard([&] {
    need(c, "construction");
    need(out, "out");
    const ConstructionResult& res = c->res;
    std::vector<json> rows;
    rows.push_back({{"type", "config"},
                    {"w", SlopeValue::parse(c->w).str()},
                    {"ell", c->ell},
                    {"r", c->r},
                    {"regime_requested", c->requested},
                    {"profile", res.profile},
                    {"constants", json::parse(constants_to_json(c->constants))},
                    {"units", "ell: arc length bound; r: minimal radius of curvature; w: initial slope"}});
    for (const auto& line : res.rationale) rows.push_back({{"type", "rationale"}, {"text", line}});
    json params = {{"type", "params"}};
    for (const auto& [k, v] : res.params) params[k] = v;
    rows.push_back(params);
    for (const auto& cl : res.claims) rows.push_back(claim_json(cl));
    if (!res.piece_counts.empty()) rows.push_back({{"type", "pieces"}, {"counts", res.piece_counts}});
    const CurveSummary& s = res.summary;
    rows.push_back({{"type", "summary"},
                    {"regime", res.regime},
                    {"length", finite(s.length)},
                    {"length_err", finite(s.length_err)},
                    {"rad_min", finite(s.rad_min)},
                    {"rad_max", finite(s.rad_max)},
                    {"initial_slope", finite(s.w)},
                    {"end_slope", finite(s.end_slope)},
                    {"segments", s.segments},
                    {"strictly_convex", s.strictly_convex},
                    {"certified", res.count.certified},
                    {"candidates", res.count.candidates},
                    {"possible", res.count.possible},
                    {"ambiguous", res.count.ambiguous.size()},
                    {"satisfied", res.satisfied()}});
    *out = dup(lines(rows));
  });
}

fa_status fa_construction_svg(const fa_construction* c, char** out) {
  return guard([&] {
    need(c, "construction");
    need(out, "out");
    *out = dup(render_svg(c->res.curve, c->res.count.points));
  });
}

fa_status fa_curve_parse(const char* text, fa_curve** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    *out = new fa_curve{read_curve(text)};
  });
}

void fa_curve_free(fa_curve* c) { delete c; }

fa_status fa_curve_text(const fa_curve* c, char** out) {
  return guard([&] {
    need(c, "curve");
    need(out, "out");
    *out = dup(write_curve(c->file));
  });
}

fa_status fa_curve_svg(const fa_curve* c, char** out) {
  return guard([&] {
    need(c, "curve");
    need(out, "out");
    *out = dup(render_svg(c->file.curve, c->file.curve.designated()));
  });
}

fa_status fa_curve_meta(const fa_curve* c, const char* key, char** out) {
  return guard([&] {
    need(c, "curve");
    need(key, "key");
    need(out, "out");
    auto it = c->file.meta.find(key);
    if (it == c->file.meta.end()) throw InvalidInput(std::string("no metadata key ") + key);
    *out = dup(it->second);
  });
}

fa_status fa_curve_verify(const fa_curve* c, const char* w, const char* format, char** out) {
  return guard([&] {
    need(c, "curve");
    need(out, "out");
    require(!c->file.curve.empty(), "curve has no segments");
    std::string fmt = format ? format : "jsonl";
    require(fmt == "jsonl" || fmt == "csv", "format must be jsonl or csv");
    SlopeValue sw = SlopeValue::from_rational(Rational(0));
    if (w) {
      sw = SlopeValue::parse(w);
    } else if (auto it = c->file.meta.find("w"); it != c->file.meta.end()) {
      sw = SlopeValue::parse(it->second);
    } else {
      sw = SlopeValue::from_rational(Rational::from_long_double(curve_summary(c->file.curve).w));
    }
    BoundReport rep = verify_curve(c->file.curve, sw);
    if (fmt == "csv") {
      *out = dup(bound_csv(rep));
    } else {
      json cfg = {{"type", "config"}, {"w", sw.str()}};
      for (const auto& [k, v] : c->file.meta) cfg["meta_" + k] = v;
      *out = dup(lines({cfg, bound_json(rep)}));
    }
  });
}

fa_status fa_local_bound(double ell, double r, double* out) {
  return guard([&] {
    need(out, "out");
    *out = static_cast<double>(local_upper_bound(ell, r));
  });
}

fa_status fa_geometric_bound(const char* w, double ell, double r, int64_t a, int64_t q, double* out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    *out = static_cast<double>(geometric_upper_bound(SlopeValue::parse(w), ell, r, Integer(static_cast<long>(a)),
                                                     Integer(static_cast<long>(q))));
  });
}

fa_status fa_bound_report(const char* w, double ell, double r, int64_t measured, char** out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    std::optional<std::int64_t> m;
    if (measured >= 0) m = measured;
    *out = dup(bound_json(bound_report(SlopeValue::parse(w), ell, r, m)).dump() + "\n");
  });
}

fa_status fa_slope_chain_oracle(const char* w, int64_t ell, double r, int64_t budget, int64_t* out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    require(budget > 0, "budget must be positive");
    *out = slope_chain_oracle(SlopeValue::parse(w), ell, r, budget);
  });
}

fa_status fa_scan(const char* w, double alpha, double r_min, double r_max, int points, char** out) {
  return guard([&] {
    need(w, "w");
    need(out, "out");
    SlopeValue sw = SlopeValue::parse(w);
    auto grid = convergent_grid(sw, r_min, r_max, points);
    auto scan = exponent_scan(sw, alpha, grid);
    std::string s = "# w=" + sw.str() + " alpha=" + num(alpha) +
                    "; ell = r^alpha; exponent = log(min(ell r^(-1/3), ell delta(w, ell/r)))/log r; "
                    "branch: curvature-limited when delta^3 r >= 1\n";
    s += "r,exponent,branch,running_max,running_min\n";
    for (const auto& p : scan)
      s += num(p.r) + "," + num(p.exponent) + "," + branch_name(p.branch) + "," + num(p.running_max) + "," +
           num(p.running_min) + "\n";
    *out = dup(s);
  });
}

}  // extern "C"
