#include "flatarc/farey.hpp"

#include <numeric>

namespace flatarc {

namespace {

using i128 = __int128;

std::int64_t to_i64(const Integer& z, const char* what) {
  require(z.fits_slong_p(), std::string(what) + " does not fit in 64 bits");
  return z.get_si();
}

i128 floor_div(i128 n, i128 d) {
  i128 q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

// x^-1 mod m for gcd(x, m) = 1, m >= 2, result in [1, m-1].
std::int64_t mod_inverse(std::int64_t x, std::int64_t m) {
  std::int64_t g = m, y = ((x % m) + m) % m, u = 0, v = 1;
  while (y != 0) {
    std::int64_t t = g / y;
    g -= t * y;
    std::swap(g, y);
    u -= t * v;
    std::swap(u, v);
  }
  require(g == 1, "modular inverse of a non-unit");
  return ((u % m) + m) % m;
}

}  // namespace

namespace detail {

UpperBound::UpperBound(const Rational& hi) : hi_(hi) {
  if (hi.num().fits_slong_p() && hi.den().fits_slong_p()) {
    small_ = true;
    n_ = hi.num().get_si();
    d_ = hi.den().get_si();
  }
}

bool UpperBound::admits_slow(std::int64_t h, std::int64_t k) const {
  return Rational(Integer(static_cast<long>(h)), Integer(static_cast<long>(k))) <= hi_;
}

}  // namespace detail

Rational FareyWindow::lo() const { return Rational(Integer(static_cast<long>(a)), Integer(static_cast<long>(q))); }

Rational FareyWindow::hi() const { return lo() + z / Rational(Integer(static_cast<long>(M * q))); }

void FareyWindow::validate() const {
  require(q >= 1, "window needs q >= 1");
  require(a >= 0, "window needs a >= 0");
  require(M >= 1, "window needs M >= 1");
  require(z.sign() > 0, "window needs z > 0");
  require(std::gcd(a, q) == 1, "window needs gcd(a, q) = 1");
  // The lemma asks a/q + 1/q^2 < 1; equality only admits a/q = 0/1, which
  // is kept so that windows starting at 0 can be counted.
  Rational lhs = lo() + Rational(Integer(1), Integer(static_cast<long>(q * q)));
  if (lhs > Rational(1)) throw InvalidInput("invalid window: a/q + 1/q^2 = " + lhs.str() + " exceeds 1");
}

FareyFraction first_at_or_above(std::int64_t M, const Rational& lo) {
  require(M >= 1, "Farey order must be positive");
  require(lo.sign() >= 0, "Farey lower end must be nonnegative");
  FareyFraction best{0, 0};
  bool small = lo.num().fits_slong_p() && lo.den().fits_slong_p();
  i128 ln = small ? lo.num().get_si() : 0, ld = small ? lo.den().get_si() : 1;
  for (std::int64_t k = 1; k <= M; ++k) {
    std::int64_t h;
    if (small) {
      i128 v = -floor_div(-ln * k, ld);
      require(v <= INT64_MAX, "Farey numerator overflow");
      h = static_cast<std::int64_t>(v);
    } else {
      h = to_i64((lo * Rational(Integer(static_cast<long>(k)))).ceil(), "Farey numerator");
    }
    if (best.k == 0 || static_cast<i128>(h) * best.k < static_cast<i128>(best.h) * k) best = {h, k};
  }
  return best;
}

FareyFraction farey_successor(std::int64_t M, FareyFraction x) {
  require(x.k >= 1 && x.k <= M, "fraction is not of the given Farey order");
  if (x.k == 1) return {x.h * M + 1, M};
  // h'k - hk' = 1 forces k' = -h^-1 (mod k); take the largest such k' <= M.
  std::int64_t inv = mod_inverse(x.h, x.k);
  std::int64_t k0 = (x.k - inv) % x.k;
  std::int64_t k1 = k0 + x.k * ((M - k0) / x.k);
  i128 h1 = (1 + static_cast<i128>(x.h) * k1) / x.k;
  return {static_cast<std::int64_t>(h1), k1};
}

FareyList enumerate_in_interval(std::int64_t M, const Rational& lo, const Rational& hi) {
  require(lo.sign() >= 0 && lo <= hi && hi <= Rational(1), "enumerate_in_interval needs 0 <= lo <= hi <= 1");
  FareyList out;
  out.order = M;
  for_each_farey(M, lo, hi, [&](std::int64_t h, std::int64_t k) { out.fractions.push_back({h, k}); });
  return out;
}

std::uint64_t count_in_interval(std::int64_t M, const Rational& lo, const Rational& hi) {
  std::uint64_t n = 0;
  for_each_farey(M, lo, hi, [&](std::int64_t, std::int64_t) { ++n; });
  return n;
}

std::uint64_t farey_size(std::int64_t M) {
  require(M >= 1, "Farey order must be positive");
  std::vector<std::int64_t> phi(static_cast<std::size_t>(M) + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::int64_t p = 2; p <= M; ++p)
    if (phi[static_cast<std::size_t>(p)] == p)
      for (std::int64_t m = p; m <= M; m += p) phi[static_cast<std::size_t>(m)] -= phi[static_cast<std::size_t>(m)] / p;
  std::uint64_t total = 1;
  for (std::int64_t k = 1; k <= M; ++k) total += static_cast<std::uint64_t>(phi[static_cast<std::size_t>(k)]);
  return total;
}

std::vector<int> mobius_table(std::int64_t n) {
  std::vector<int> mu(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)) + 1, 1);
  std::vector<bool> composite(mu.size(), false);
  mu[0] = 0;
  for (std::int64_t p = 2; p <= n; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    for (std::int64_t m = p; m <= n; m += p) {
      if (m > p) composite[static_cast<std::size_t>(m)] = true;
      mu[static_cast<std::size_t>(m)] = -mu[static_cast<std::size_t>(m)];
    }
    for (i128 sq = static_cast<i128>(p) * p, m = sq; m <= n; m += sq) mu[static_cast<std::size_t>(m)] = 0;
  }
  return mu;
}

namespace {

std::uint64_t strict_by_sieve(const FareyWindow& w) {
  std::int64_t zn = to_i64(w.z.num(), "window z numerator");
  std::int64_t zd = to_i64(w.z.den(), "window z denominator");
  // m = qh - ak ranges over 1 <= m < z.
  std::int64_t m_max = (zn - 1) / zd;
  if (m_max < 1) return 0;
  // k = qj - abar*m, h = aj - s*m with a*abar - q*s = 1.
  std::int64_t abar = w.q == 1 ? 1 : mod_inverse(w.a, w.q);
  std::vector<int> mu = mobius_table(m_max);
  i128 total = 0;
  for (std::int64_t d = 1; d <= m_max; ++d) {
    int md = mu[static_cast<std::size_t>(d)];
    if (md == 0) continue;
    // gcd(h, k) = gcd(j, m); write j = d j*, m = d m*.
    for (std::int64_t ms = 1; static_cast<i128>(ms) * d <= m_max; ++ms) {
      // q j* - abar m* in (m* M/z, M/d].
      i128 upper = floor_div(static_cast<i128>(w.M) + static_cast<i128>(abar) * ms * d, static_cast<i128>(w.q) * d);
      i128 lower = floor_div(static_cast<i128>(ms) * (static_cast<i128>(w.M) * zd + static_cast<i128>(abar) * zn),
                             static_cast<i128>(w.q) * zn);
      if (upper > lower) total += md * (upper - lower);
    }
  }
  require(total >= 0, "internal: negative sieve count");
  return static_cast<std::uint64_t>(total);
}

std::uint64_t endpoint_hits(const FareyWindow& w) {
  std::uint64_t n = w.q <= w.M ? 1 : 0;
  Rational hi = w.hi();
  if (hi.den() <= Integer(static_cast<long>(w.M))) ++n;
  return n;
}

}  // namespace

std::uint64_t count_window_closed(const FareyWindow& win) {
  win.validate();
  return count_in_interval(win.M, win.lo(), win.hi());
}

std::uint64_t count_window(const FareyWindow& win, CountMode mode) {
  win.validate();
  if (mode == CountMode::sieve) return strict_by_sieve(win);
  return count_in_interval(win.M, win.lo(), win.hi()) - endpoint_hits(win);
}

FareyLowerBound lower_bound_check(const FareyWindow& win, const Rational& C) {
  win.validate();
  // 40-digit enclosure of pi.
  static const Rational pi_lo = Rational::parse("3.141592653589793238462643383279502884197");
  static const Rational pi_hi = Rational::parse("3.141592653589793238462643383279502884198");
  FareyLowerBound r;
  r.C = C;
  r.count = count_window(win, CountMode::enumerate);
  Rational zm_q = win.z * Rational(Integer(static_cast<long>(win.M)), Integer(static_cast<long>(win.q)));
  r.bound_lo = zm_q / (pi_hi * pi_hi);
  r.bound = zm_q / (pi_lo * pi_lo);
  Rational count(Integer(static_cast<unsigned long>(r.count)));
  if (count >= r.bound) {
    r.satisfied = true;
  } else if (count < r.bound_lo) {
    r.satisfied = false;
  } else {
    throw PrecisionExhausted("count lies inside the enclosure of zM/(pi^2 q)", 40);
  }
  Rational Mq(Integer(static_cast<long>(win.M)), Integer(static_cast<long>(win.q)));
  Rational lhs = win.lo() + Rational(Integer(1), Integer(static_cast<long>(win.q * win.q)));
  r.hypothesis_met = win.z > C && Mq > C && lhs < Rational(1);
  return r;
}

FareyFraction mediant(FareyFraction x, FareyFraction y) {
  std::int64_t h = x.h + y.h, k = x.k + y.k;
  std::int64_t g = std::gcd(h, k);
  return {h / g, k / g};
}

Rational mediant(const Rational& x, const Rational& y) {
  require(x < y, "mediant needs h1/k1 < h2/k2");
  return Rational(Integer(x.num() + y.num()), Integer(x.den() + y.den()));
}

}  // namespace flatarc
