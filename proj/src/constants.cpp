#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "flatarc/constructions.hpp"

namespace flatarc {

namespace {

using Json = nlohmann::ordered_json;

struct Field {
  const char* key;
  long double Constants::*ptr;
};

constexpr Field kFields[] = {
    {"C_farey", &Constants::C_farey},       {"C", &Constants::C},
    {"irr_ell", &Constants::irr_ell},       {"interval_div", &Constants::interval_div},
    {"K4", &Constants::K4},                 {"k", &Constants::k},
    {"omega_min", &Constants::omega_min},   {"rat_ell", &Constants::rat_ell},
    {"very_near_div", &Constants::very_near_div}, {"trivial_K", &Constants::trivial_K},
    {"glue_radius", &Constants::glue_radius}, {"glue_len_div", &Constants::glue_len_div},
    {"glue_rho", &Constants::glue_rho},     {"glue_turn", &Constants::glue_turn},
    {"glue_gap", &Constants::glue_gap},     {"glue_count", &Constants::glue_count},
};

void validate(const Constants& c) {
  for (const auto& f : kFields) {
    long double v = c.*f.ptr;
    require(std::isfinite(v) && v >= 0, std::string("constant ") + f.key + " must be finite and >= 0");
    if (f.ptr != &Constants::glue_count) require(v > 0, std::string("constant ") + f.key + " must be positive");
  }
  require(c.C >= 1, "constant C must be >= 1");
  require(c.k >= 1, "constant k must be >= 1");
}

}  // namespace

long double Constants::irr_count() const { return C * C / (8 * M_PIl * M_PIl * interval_div); }

Constants paper_constants() {
  Constants c;
  c.name = "paper";
  c.C_farey = 30;
  c.C = std::max(8 * M_PIl * M_PIl, c.C_farey);
  long double C = c.C, C4 = C * C * C * C;
  c.irr_ell = 800 * C * C;
  c.interval_div = 400 * C * C * C;
  c.K4 = 800 * C4;
  c.k = c.K4 * c.K4;
  c.omega_min = 800 * C;
  c.rat_ell = c.K4 * c.K4;
  c.very_near_div = 25;
  c.trivial_K = c.irr_ell;
  c.glue_radius = 500;
  c.glue_len_div = 24;
  c.glue_rho = 250;
  c.glue_turn = 1;
  c.glue_gap = 1;
  // No value is published; the irrational coefficient stands in.
  c.glue_count = c.irr_count();
  return c;
}

Constants desk_constants() {
  Constants c;
  c.name = "desk";
  c.C_farey = 30;
  c.C = 1;
  c.irr_ell = 16;
  c.interval_div = 1;
  c.K4 = 8;
  c.k = 4;
  c.omega_min = 4;
  c.rat_ell = 16;
  c.very_near_div = 1;
  c.trivial_K = 4;
  c.glue_radius = 150;
  c.glue_len_div = 24;
  c.glue_rho = 100;
  c.glue_turn = 0.05L;
  c.glue_gap = 2;
  c.glue_count = 0.002L;
  return c;
}

Constants named_constants(const std::string& name) {
  if (name == "paper") return paper_constants();
  if (name == "desk") return desk_constants();
  throw InvalidInput("unknown constants profile '" + name + "' (expected paper or desk)");
}

Constants constants_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("constants file is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "constants file must hold a JSON object");
  Constants c;
  bool inherited = j.contains("inherit");
  if (inherited) {
    require(j["inherit"].is_string(), "inherit must name a profile");
    c = named_constants(j["inherit"].get<std::string>());
  }
  c.name = j.contains("name") ? j["name"].get<std::string>() : std::string("custom");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "inherit" || it.key() == "name") continue;
    bool known = false;
    for (const auto& f : kFields) known = known || it.key() == f.key;
    require(known, "unknown constant '" + it.key() + "'");
    require(it.value().is_number(), "constant '" + it.key() + "' must be a number");
  }
  for (const auto& f : kFields) {
    if (j.contains(f.key)) {
      c.*f.ptr = j[f.key].get<long double>();
    } else {
      require(inherited, std::string("constant ") + f.key + " missing and no profile inherited");
    }
  }
  validate(c);
  return c;
}

std::string constants_to_json(const Constants& c) {
  std::string out = "{\"name\": \"" + c.name + "\"";
  char buf[64];
  for (const auto& f : kFields) {
    std::snprintf(buf, sizeof buf, "%.21Lg", c.*f.ptr);
    out += std::string(", \"") + f.key + "\": " + buf;
  }
  return out + "}";
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::automatic: return "auto";
    case Regime::trivial: return "trivial";
    case Regime::farey: return "farey";
    case Regime::irrational: return "irrational";
    case Regime::rational: return "rational";
    case Regime::very_near: return "rational-very-near";
    case Regime::near: return "rational-near";
    case Regime::glued: return "glued";
  }
  return "?";
}

Regime parse_regime(const std::string& s) {
  for (Regime r : {Regime::automatic, Regime::trivial, Regime::farey, Regime::irrational, Regime::rational,
                   Regime::very_near, Regime::near, Regime::glued})
    if (s == regime_name(r)) return r;
  throw InvalidInput("unknown regime '" + s + "'");
}

}  // namespace flatarc
