#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's search or enumeration code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// min over q of q*x + ||q w|| for rational w by scanning q = 1, 2, ...;
// stops once q*x alone reaches the best value.
inline std::pair<mpq_class, long> delta_rational(const mpq_class& w, const mpq_class& x) {
  mpq_class best = -1;
  long best_q = 0;
  for (long q = 1;; ++q) {
    mpq_class qx = x * q;
    if (best_q != 0 && qx >= best) break;
    mpq_class qw = w * q;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), qw.get_num_mpz_t(), qw.get_den_mpz_t());
    mpq_class frac = qw - fl;
    mpq_class norm = frac <= mpq_class(1, 2) ? frac : mpq_class(1 - frac);
    mpq_class v = qx + norm;
    if (best_q == 0 || v < best) {
      best = v;
      best_q = q;
    }
  }
  return {best, best_q};
}

// Same scan in 1024-bit binary floating point for w = (p + s sqrt d)/den.
inline std::pair<mpf_class, long> delta_float(long p, long s, long d, long den, const mpq_class& xq) {
  const mp_bitcnt_t prec = 1024;
  mpf_class w(0, prec), x(xq, prec), root(0, prec);
  mpf_sqrt_ui(root.get_mpf_t(), static_cast<unsigned long>(d));
  w = (mpf_class(p, prec) + mpf_class(s, prec) * root) / mpf_class(den, prec);
  mpf_class best(-1, prec);
  mpf_class eps("1e-250", prec);
  long best_q = 0;
  for (long q = 1;; ++q) {
    mpf_class qx(x * q, prec);
    if (best_q != 0 && qx >= best) break;
    mpf_class qw(w * q, prec);
    mpf_class fl(0, prec);
    mpf_floor(fl.get_mpf_t(), qw.get_mpf_t());
    mpf_class frac(qw - fl, prec);
    mpf_class norm = frac <= 0.5 ? frac : mpf_class(1 - frac, prec);
    mpf_class v(qx + norm, prec);
    if (best_q == 0 || v < best - eps) {
      best = v;
      best_q = q;
    }
  }
  return {best, best_q};
}

// All reduced h/k in [lo, hi] with k <= M, by a gcd scan over all pairs.
inline std::vector<std::pair<long, long>> farey_scan(long M, const mpq_class& lo, const mpq_class& hi) {
  std::vector<std::pair<mpq_class, std::pair<long, long>>> found;
  for (long k = 1; k <= M; ++k) {
    mpq_class lk = lo * k, hk = hi * k;
    mpz_class h0, h1;
    mpz_cdiv_q(h0.get_mpz_t(), lk.get_num_mpz_t(), lk.get_den_mpz_t());
    mpz_fdiv_q(h1.get_mpz_t(), hk.get_num_mpz_t(), hk.get_den_mpz_t());
    for (long h = h0.get_si(); h <= h1.get_si(); ++h)
      if (std::gcd(h, k) == 1) found.push_back({mpq_class(h, k), {h, k}});
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<long, long>> out;
  for (auto& f : found) out.push_back(f.second);
  return out;
}

inline long totient(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

}  // namespace oracle
