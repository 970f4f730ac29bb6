#pragma once

#include <cstdint>
#include <vector>

#include "flatarc/exact_arith.hpp"

namespace flatarc {

struct FareyFraction {
  std::int64_t h = 0;
  std::int64_t k = 1;
  Rational value() const { return Rational(Integer(static_cast<long>(h)), Integer(static_cast<long>(k))); }
  friend bool operator==(const FareyFraction&, const FareyFraction&) = default;
};

struct FareyList {
  std::vector<FareyFraction> fractions;
  std::int64_t order = 1;
};

// Query window [a/q, a/q + z/(Mq)] at Farey order M.
struct FareyWindow {
  std::int64_t a = 0;
  std::int64_t q = 1;
  std::int64_t M = 1;
  Rational z = Rational(1);

  Rational lo() const;
  Rational hi() const;
  // gcd(a,q) = 1, q >= 1, a >= 0, M >= 1, z > 0 and a/q + 1/q^2 <= 1.
  void validate() const;
};

enum class CountMode { enumerate, sieve };

// Smallest reduced h/k >= lo with k <= M. Works for any lo >= 0 (the Farey
// set is extended periodically beyond 1).
FareyFraction first_at_or_above(std::int64_t M, const Rational& lo);
// Next fraction after h/k among reduced fractions with denominator <= M.
FareyFraction farey_successor(std::int64_t M, FareyFraction x);

// Calls fn(h, k) for every reduced h/k in [lo, hi] with k <= M, increasing.
template <class Fn>
void for_each_farey(std::int64_t M, const Rational& lo, const Rational& hi, Fn&& fn);

FareyList enumerate_in_interval(std::int64_t M, const Rational& lo, const Rational& hi);
// Same set as enumerate_in_interval, counted without storing; hi may exceed 1.
std::uint64_t count_in_interval(std::int64_t M, const Rational& lo, const Rational& hi);
// |F_M| = 1 + sum of phi(k) for k <= M, by a totient sieve.
std::uint64_t farey_size(std::int64_t M);
std::vector<int> mobius_table(std::int64_t n);

// Strict-interior count: coprime (h,k), k <= M, 0 < qh - ak < zk/M.
std::uint64_t count_window(const FareyWindow& win, CountMode mode);
// Count over the closed window, endpoints included when they have
// denominator <= M.
std::uint64_t count_window_closed(const FareyWindow& win);

struct FareyLowerBound {
  std::uint64_t count = 0;    // strict-interior count
  Rational bound;             // upper end of the certified enclosure of zM/(pi^2 q)
  Rational bound_lo;          // lower end of that enclosure
  bool satisfied = false;     // count >= zM/(pi^2 q)
  bool hypothesis_met = false;  // z > C, M/q > C and a/q + 1/q^2 < 1
  Rational C;
};

FareyLowerBound lower_bound_check(const FareyWindow& win, const Rational& C);

FareyFraction mediant(FareyFraction x, FareyFraction y);
Rational mediant(const Rational& x, const Rational& y);

namespace detail {
// h/k <= hi, with a 128-bit fast path when hi has small terms.
class UpperBound {
 public:
  explicit UpperBound(const Rational& hi);
  bool admits(std::int64_t h, std::int64_t k) const {
    if (small_) return static_cast<__int128>(h) * d_ <= static_cast<__int128>(n_) * k;
    return admits_slow(h, k);
  }

 private:
  bool admits_slow(std::int64_t h, std::int64_t k) const;
  Rational hi_;
  bool small_ = false;
  std::int64_t n_ = 0, d_ = 1;
};
}  // namespace detail

template <class Fn>
void for_each_farey(std::int64_t M, const Rational& lo, const Rational& hi, Fn&& fn) {
  require(M >= 1, "Farey order must be positive");
  require(lo.sign() >= 0 && lo <= hi, "Farey interval needs 0 <= lo <= hi");
  detail::UpperBound upper(hi);
  FareyFraction x = first_at_or_above(M, lo);
  if (!upper.admits(x.h, x.k)) return;
  fn(x.h, x.k);
  FareyFraction y = farey_successor(M, x);
  std::int64_t a = x.h, b = x.k, c = y.h, d = y.k;
  while (upper.admits(c, d)) {
    fn(c, d);
    std::int64_t t = (M + b) / d;
    std::int64_t p = t * c - a, s = t * d - b;
    a = c;
    b = d;
    c = p;
    d = s;
  }
}

}  // namespace flatarc
