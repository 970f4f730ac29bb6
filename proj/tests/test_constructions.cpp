#include <cmath>
#include <set>

#include "doctest.h"
#include "flatarc/constructions.hpp"
#include "flatarc/errors.hpp"
#include "oracles.hpp"

using namespace flatarc;

namespace {

const char* kGolden = "quad:(-1+1*sqrt(5))/2";

ConstructionSpec make(const char* w, long double ell, long double r, Regime regime,
                      const Constants& c = desk_constants()) {
  return ConstructionSpec{SlopeValue::parse(w), ell, r, c, regime, {}, {}};
}

long param_l(const ConstructionResult& res, const std::string& key) { return std::stol(res.params.at(key)); }

std::set<LatticePoint> designated_set(const ConstructionResult& res) {
  auto v = res.curve.designated();
  return {v.begin(), v.end()};
}

// Points P_1..P_m of the rational sequence rebuilt from the recorded
// parameters with plain integer arithmetic.
std::vector<LatticePoint> sequence_oracle(const ConstructionResult& res) {
  long a = param_l(res, "a"), q = param_l(res, "q"), abar = param_l(res, "abar");
  long Omega = param_l(res, "Omega"), G = param_l(res, "G"), m = param_l(res, "points");
  bool above = res.params.at("side") == "above";
  REQUIRE((a * abar) % q == 1 % q);
  std::vector<LatticePoint> out;
  long x = 0, y = 0;
  for (long j = 1; j <= m; ++j) {
    long dx = above ? Omega - abar - (j - 1) * q * G : Omega + abar % q + (j - 1) * q * G;
    long num = a * dx + (above ? 1 : -1);
    CHECK(num % q == 0);
    x += dx;
    y += num / q;
    out.push_back({x, y});
  }
  return out;
}

void check_headline(const ConstructionResult& res, long double w, long double ell, long double r) {
  CHECK(res.claim("initial_slope").satisfied);
  CHECK(std::fabs(res.summary.w - w) < 1e-15L);
  CHECK(res.claim("length").satisfied);
  CHECK(res.summary.length <= ell);
  CHECK(res.claim("lattice_count").satisfied);
  CHECK(res.summary.strictly_convex);
  CHECK(static_cast<long double>(res.count.certified) <= 2 * ell / std::cbrt(r) + 2);
  CHECK(res.satisfied());
}

}  // namespace

TEST_CASE("farey curve through the scanned fractions") {
  mpq_class lo(1, 10), hi(2, 15);
  auto fr = oracle::farey_scan(10, lo, hi);
  REQUIRE(fr.size() >= 3);
  auto res = build_farey_curve(Rational(1, 10), Rational(2, 15), 10);
  CHECK(res.count.certified >= fr.size() - 1);
  CHECK(res.satisfied());

  // Designated points: partial sums of [M^2/k^2] (k, h) over the interior
  // fractions, starting at the origin.
  std::set<LatticePoint> want{{0, 0}};
  long x = 0, y = 0;
  for (std::size_t j = 1; j + 1 < fr.size(); ++j) {
    auto [h, k] = fr[j];
    long lambda = (2 * 100 + k * k) / (2 * k * k);  // nearest integer of 100/k^2
    if (k == 10) CHECK(lambda == 1);
    x += lambda * k;
    y += lambda * h;
    want.insert({x, y});
  }
  CHECK(designated_set(res) == want);
}

TEST_CASE("farey curve junction ratios and claims") {
  auto res = build_farey_curve(Rational(1, 3), Rational(1, 3) + Rational(1, 100), 100);
  CHECK(res.claim("junction_ratio_min").measured >= -3);
  CHECK(res.claim("junction_ratio_max").measured <= -1.0L / 3);
  CHECK(res.claim("length").satisfied);
  CHECK(res.count.certified >= oracle::farey_scan(100, mpq_class(1, 3), mpq_class(103, 300)).size() - 1);
  CHECK(res.satisfied());
}

TEST_CASE("farey curve preconditions") {
  CHECK_THROWS_AS(build_farey_curve(Rational(0), Rational(1, 10), 50), InvalidInput);
  CHECK_THROWS_AS(build_farey_curve(Rational(1, 3), Rational(1, 3) + Rational(1, 1000), 10), TooFewFareyFractions);
}

TEST_CASE("irrational regime, golden slope at r = 1e6") {
  long double r = 1e6L, ell = std::pow(r, 0.55L);
  auto res = build_curve(make(kGolden, ell, r, Regime::irrational));
  CHECK(res.regime == "irrational");
  check_headline(res, (std::sqrt(5.0L) - 1) / 2, ell, r);
  CHECK(res.claim("lattice_count").lo == doctest::Approx(desk_constants().irr_count() * ell / std::cbrt(r)));
  CHECK(res.claim("tangent_gap").satisfied);
  CHECK(res.claim("arc_length").satisfied);
  // The scan finds exactly the designated points on this curve.
  CHECK(res.count.candidates == res.count.certified);
}

TEST_CASE("irrational regime trim accounting") {
  Constants c = constants_from_json(R"({"inherit": "desk", "C": 2, "interval_div": 8})");
  long double r = 1e6L, ell = std::pow(r, 0.55L);
  auto res = build_curve(make(kGolden, ell, r, Regime::irrational, c));
  REQUIRE(res.params.at("start") == "trimmed");
  long deleted = param_l(res, "deleted");
  CHECK(deleted >= 1);
  // Consecutive fractions of F_M are at least M^-2 apart.
  long M = param_l(res, "M");
  long double dist = std::fabs((std::sqrt(5.0L) - 1) / 2 - std::stold(res.params.at("a")) / std::stold(res.params.at("q")));
  CHECK(deleted <= 1 + M * M * dist);
  CHECK(res.claim("trim_deleted").satisfied);
  CHECK(res.satisfied());
}

TEST_CASE("irrational regime rejects close rational approximations") {
  CHECK_THROWS_AS(build_curve(make("rat:1/3", 2000, 1e6L, Regime::irrational)), HypothesisViolated);
  CHECK_THROWS_AS(build_curve(make(kGolden, 100, 1e6L, Regime::irrational)), HypothesisViolated);
}

TEST_CASE("very near regime on w = a/q") {
  long double r = 1e9L, ell = 5e5L;
  auto res = build_curve(make("rat:1/3", ell, r, Regime::rational));
  REQUIRE(res.regime == "rational-very-near");
  check_headline(res, 1.0L / 3, ell, r);
  auto pts = sequence_oracle(res);
  auto des = designated_set(res);
  CHECK(std::set<LatticePoint>(pts.begin(), pts.end()) == des);
  // Delta x bracket with the desk omega_min.
  long Omega = param_l(res, "Omega");
  long double e = 2 / desk_constants().omega_min;
  long px = 0;
  for (auto& p : pts) {
    long dx = p.x - px;
    px = p.x;
    CHECK(dx < Omega);
    CHECK(static_cast<long double>(dx) > Omega * (1 - e));
  }
  // At w = a/q the first tangent exceeds w by 2/(q(dx_1 + dx_2)) <
  // 1/(q Omega (1 - e)). The published l/(20 r) needs k >= 20 on top of this.
  long q = param_l(res, "q");
  const auto& arc = res.claim("arc_angle_paper");
  CHECK(arc.measured > 0);
  CHECK(arc.measured <= 1 / (q * Omega * (1 - e)));
  CHECK(arc.kind == "paper");
}

TEST_CASE("very near regime with a nearby rational slope") {
  long double r = 1e9L, ell = 5e5L;
  auto res = build_curve(make("rat:20000001/70000000", ell, r, Regime::rational));
  REQUIRE(res.regime == "rational-very-near");
  CHECK(res.params.at("q") == "7");
  check_headline(res, 20000001.0L / 70000000, ell, r);
  auto pts = sequence_oracle(res);
  CHECK(std::set<LatticePoint>(pts.begin(), pts.end()) == designated_set(res));
}

TEST_CASE("near regime above and below") {
  long double r = 1e9L, ell = 5e5L;
  auto up = build_curve(make("rat:8/10000", ell, r, Regime::rational));
  auto down = build_curve(make("rat:9992/10000", ell, r, Regime::rational));
  REQUIRE(up.regime == "rational-near");
  REQUIRE(down.regime == "rational-near");
  CHECK(up.params.at("side") == "above");
  CHECK(down.params.at("side") == "below");
  check_headline(up, 0.0008L, ell, r);
  check_headline(down, 0.9992L, ell, r);
  // The two slopes mirror each other about a/q, and so do the counts.
  CHECK(up.count.certified == down.count.certified);
  for (auto* res : {&up, &down}) {
    CHECK(res->claim("chord_gap").satisfied);
    CHECK(res->claim("delta_identity").satisfied);
    CHECK(res->claim("kept_vs_N").satisfied);
    auto pts = sequence_oracle(*res);
    CHECK(std::set<LatticePoint>(pts.begin(), pts.end()) == designated_set(*res));
  }
  // qw - a = 8e-4 here: 0 < tan(theta) - w < 4 (qw - a)^2.
  CHECK(up.claim("chord_gap").measured > 0);
  CHECK(up.claim("chord_gap").measured < 4 * 0.0008L * 0.0008L);
}

TEST_CASE("rational regimes reject short arcs") {
  CHECK_THROWS_AS(build_curve(make("rat:1/3", 100, 1e9L, Regime::very_near)), HypothesisViolated);
  CHECK_THROWS_AS(build_curve(make("rat:1/3", 100, 1e9L, Regime::near)), HypothesisViolated);
}

TEST_CASE("glued single piece just above r^(2/3)/12") {
  long double r = 1e6L, ell = 1.01L * 10000 / 12;
  auto res = build_curve(make(kGolden, ell, r, Regime::glued));
  CHECK(res.params.at("pieces") == "1");
  CHECK(res.piece_counts.size() == 1);
  check_headline(res, (std::sqrt(5.0L) - 1) / 2, ell, r);
}

TEST_CASE("glued chain at r = 1e6") {
  long double r = 1e6L, ell = 10 * 10000.0L;
  auto res = build_curve(make("quad:(0+1*sqrt(2))/2", ell, r, Regime::glued));
  REQUIRE(res.piece_counts.size() >= 2);
  check_headline(res, std::sqrt(2.0L) / 2, ell, r);
  std::uint64_t sum = 0;
  for (auto n : res.piece_counts) sum += n;
  CHECK(sum == res.count.certified);
  CHECK(res.summary.rad_min >= r);
  CHECK(res.claim("curvature_vs_r").satisfied);
}

TEST_CASE("glued from a rational slope") {
  // The first piece has no workable regime at its radius and keeps one point.
  long double r = 1e8L, ell = 3e5L;
  auto res = build_curve(make("rat:1/3", ell, r, Regime::glued));
  check_headline(res, 1.0L / 3, ell, r);
  CHECK(res.piece_counts.front() == 1);
  CHECK(res.claim("lattice_count").lo >= 1);
  CHECK(res.claim("lattice_count_linear").kind == "paper");
}

TEST_CASE("auto selection") {
  auto small = build_curve(make(kGolden, 50, 1e6L, Regime::automatic));
  CHECK(small.regime == "trivial");
  CHECK(small.count.certified >= 1);
  CHECK(!small.rationale.empty());

  auto glued = build_curve(make(kGolden, 2000, 1e6L, Regime::automatic));
  CHECK(glued.regime == "glued");
  CHECK(glued.rationale.front().find("glued") != std::string::npos);

  auto irr = build_curve(make(kGolden, 3e4L, 1e9L, Regime::automatic));
  CHECK(irr.regime == "irrational");
  CHECK(irr.satisfied());
}

TEST_CASE("mod inverse") {
  CHECK(mod_inverse(Integer(1), Integer(3)) == 1);
  CHECK(mod_inverse(Integer(2), Integer(7)) == 4);
  CHECK(mod_inverse(Integer(0), Integer(1)) == 1);
}

TEST_CASE("constant profiles") {
  Constants p = paper_constants();
  CHECK(p.C == doctest::Approx(8 * M_PI * M_PI));
  CHECK(p.K4 == doctest::Approx(800 * std::pow(static_cast<double>(p.C), 4)));
  CHECK(p.irr_count() == doctest::Approx(1 / (3200 * M_PI * M_PI * p.C)));
  CHECK(p.count_factor() == doctest::Approx(std::pow(static_cast<double>(p.K4), -6)));

  Constants d = desk_constants();
  Constants back = constants_from_json(constants_to_json(d));
  // JSON numbers are doubles.
  CHECK(back.K4 == doctest::Approx(d.K4));
  CHECK(back.glue_count == doctest::Approx(d.glue_count));
  CHECK(back.name == d.name);
  Constants over = constants_from_json(R"({"inherit": "desk", "k": 5})");
  CHECK(over.k == 5);
  CHECK(over.K4 == d.K4);
  CHECK_THROWS_AS(constants_from_json(R"({"inherit": "desk", "kk": 5})"), InvalidInput);
  CHECK_THROWS_AS(constants_from_json(R"({"inherit": "desk", "k": -1})"), InvalidInput);
  CHECK_THROWS_AS(constants_from_json("[1, 2]"), InvalidInput);
  CHECK_THROWS_AS(named_constants("other"), InvalidInput);
}

TEST_CASE("regime names round trip") {
  for (auto r : {Regime::automatic, Regime::trivial, Regime::farey, Regime::irrational, Regime::rational,
                 Regime::very_near, Regime::near, Regime::glued})
    CHECK(parse_regime(regime_name(r)) == r);
  CHECK_THROWS_AS(parse_regime("bogus"), InvalidInput);
}
