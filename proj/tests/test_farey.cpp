#include <random>

#include "doctest.h"
#include "flatarc/farey.hpp"
#include "oracles.hpp"

using namespace flatarc;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

std::uint64_t strict_scan(const FareyWindow& w) {
  std::uint64_t n = 0;
  mpq_class lo(w.a, w.q), hi = lo + w.z.raw() / (w.M * w.q);
  for (auto [h, k] : oracle::farey_scan(w.M, lo, hi)) {
    mpq_class v(h, k);
    if (v > lo && v < hi) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("enumerate_in_interval examples") {
  auto all = enumerate_in_interval(10, R("0"), R("1"));
  CHECK(all.fractions.size() == 33);
  std::uint64_t phi_sum = 1;
  for (long k = 1; k <= 10; ++k) phi_sum += static_cast<std::uint64_t>(oracle::totient(k));
  CHECK(phi_sum == 33);

  auto one = enumerate_in_interval(1, R("0"), R("1"));
  REQUIRE(one.fractions.size() == 2);
  CHECK(one.fractions[0] == FareyFraction{0, 1});
  CHECK(one.fractions[1] == FareyFraction{1, 1});

  auto mid = enumerate_in_interval(5, R("1/3"), R("2/3"));
  std::vector<FareyFraction> want{{1, 3}, {2, 5}, {1, 2}, {3, 5}, {2, 3}};
  CHECK(mid.fractions == want);
}

TEST_CASE("enumeration matches the gcd scan on random intervals") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    long M = 1 + static_cast<long>(rng() % 120);
    long d1 = 1 + static_cast<long>(rng() % 500), d2 = 1 + static_cast<long>(rng() % 500);
    long n1 = static_cast<long>(rng() % static_cast<unsigned long>(d1 + 1));
    long n2 = static_cast<long>(rng() % static_cast<unsigned long>(d2 + 1));
    Rational a{Integer(n1), Integer(d1)}, b{Integer(n2), Integer(d2)};
    Rational lo = min(a, b), hi = max(a, b);
    auto got = enumerate_in_interval(M, lo, hi);
    auto want = oracle::farey_scan(M, lo.raw(), hi.raw());
    REQUIRE(got.fractions.size() == want.size());
    for (std::size_t j = 0; j < want.size(); ++j) {
      CHECK(got.fractions[j].h == want[j].first);
      CHECK(got.fractions[j].k == want[j].second);
    }
    for (std::size_t j = 1; j < got.fractions.size(); ++j) {
      const auto& x = got.fractions[j - 1];
      const auto& y = got.fractions[j];
      CHECK(y.h * x.k - x.h * y.k == 1);
      // Gap at least 1/M^2.
      CHECK(y.value() - x.value() >= Rational(Integer(1), Integer(M * M)));
    }
  }
}

TEST_CASE("Farey sizes follow the totient sum") {
  for (long M = 1; M <= 300; ++M) {
    std::uint64_t want = 1;
    for (long k = 1; k <= M; ++k) want += static_cast<std::uint64_t>(oracle::totient(k));
    CHECK(farey_size(M) == want);
    CHECK(count_in_interval(M, R("0"), R("1")) == want);
  }
}

TEST_CASE("count_window examples") {
  FareyWindow w{0, 1, 10, R("2")};
  // (0, 1/5): 1/10, 1/9, 1/8, 1/7, 1/6.
  CHECK(count_window(w, CountMode::enumerate) == 5);
  CHECK(count_window(w, CountMode::sieve) == 5);
  CHECK(count_window(w, CountMode::enumerate) == strict_scan(w));
  CHECK(count_window_closed(w) == 7);

  FareyWindow tiny{0, 1, 1, R("1/2")};
  CHECK(count_window(tiny, CountMode::enumerate) == 0);
  CHECK(count_window(tiny, CountMode::sieve) == 0);

  FareyWindow bad{2, 4, 10, R("1")};
  CHECK_THROWS_AS(count_window(bad, CountMode::enumerate), InvalidInput);
  FareyWindow bad2{1, 1, 10, R("1")};
  CHECK_THROWS_AS(count_window(bad2, CountMode::sieve), InvalidInput);
}

TEST_CASE("sieve agrees with enumeration and the gcd scan") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    long q = 1 + static_cast<long>(rng() % 20);
    long a = static_cast<long>(rng() % static_cast<unsigned long>(q));
    if (std::gcd(a, q) != 1) continue;
    long M = 1 + static_cast<long>(rng() % 200);
    Rational z(Integer(1 + static_cast<long>(rng() % 2000)), Integer(1 + static_cast<long>(rng() % 20)));
    FareyWindow w{a, q, M, z};
    auto e = count_window(w, CountMode::enumerate);
    CHECK(e == count_window(w, CountMode::sieve));
    CHECK(e == strict_scan(w));
  }
}

TEST_CASE("lower_bound_check examples") {
  auto r = lower_bound_check(FareyWindow{1, 3, 300, R("50")}, R("30"));
  CHECK(r.satisfied);
  CHECK(r.hypothesis_met);
  CHECK(r.bound.to_double() == doctest::Approx(50.0 * 100 / (M_PI * M_PI)).epsilon(1e-12));

  auto full = lower_bound_check(FareyWindow{0, 1, 1000, R("1000")}, R("30"));
  CHECK(full.count == farey_size(1000) - 2);
  CHECK(full.satisfied);

  // z < 1: nothing strictly inside.
  auto small = lower_bound_check(FareyWindow{1, 3, 300, R("1/2")}, R("30"));
  CHECK(small.count == 0);
  CHECK_FALSE(small.hypothesis_met);
}

TEST_CASE("mediants") {
  CHECK(mediant(R("0"), R("1")) == R("1/2"));
  CHECK(mediant(R("1/3"), R("2/5")) == R("3/8"));
  auto list = enumerate_in_interval(12, R("0"), R("1"));
  for (std::size_t j = 1; j < list.fractions.size(); ++j) {
    auto m = mediant(list.fractions[j - 1], list.fractions[j]);
    CHECK(m.k > 12);
    CHECK(m.value() > list.fractions[j - 1].value());
    CHECK(m.value() < list.fractions[j].value());
  }
}

TEST_CASE("successor and periodic extension past 1") {
  CHECK(farey_successor(5, FareyFraction{0, 1}) == FareyFraction{1, 5});
  CHECK(farey_successor(5, FareyFraction{1, 1}) == FareyFraction{6, 5});
  CHECK(farey_successor(5, FareyFraction{2, 5}) == FareyFraction{1, 2});
  CHECK(count_in_interval(7, R("0"), R("2")) == 2 * count_in_interval(7, R("0"), R("1")) - 1);
  CHECK(first_at_or_above(10, R("3/10")) == FareyFraction{3, 10});
  CHECK(first_at_or_above(10, R("301/1000")) == FareyFraction{1, 3});
}
