#include <cmath>
#include <limits>

#include "flatarc/exact_arith.hpp"

namespace flatarc {

namespace {

// Convergents of a partial-quotient list; drops 0/1 when a_1 = 1 so the
// denominators increase strictly.
std::vector<Convergent> fold(const std::vector<Integer>& c) {
  std::vector<Convergent> out;
  Integer p_prev = 1, q_prev = 0, p = c.empty() ? Integer(0) : c[0], q = 1;
  if (c.empty()) return out;
  out.push_back({p, q, c[0], 0});
  for (std::size_t i = 1; i < c.size(); ++i) {
    Integer p2 = c[i] * p + p_prev, q2 = c[i] * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p2;
    q = q2;
    if (q == out.back().q) out.pop_back();
    out.push_back({p, q, c[i], 0});
  }
  return out;
}

void fill_betas(const SlopeValue& w, std::vector<Convergent>& entries) {
  for (auto& e : entries) e.beta = convergent_beta(w, e.a, e.q);
}

}  // namespace

long double convergent_beta(const SlopeValue& w, const Integer& a, const Integer& q) {
  constexpr long double inf = std::numeric_limits<long double>::infinity();
  if (q == 1) return inf;
  CertifiedReal diff = w.value() - CertifiedReal(Rational(a, q));
  long double mag;
  if (diff.is_exact()) {
    if (diff.exact().sign() == 0) return inf;
    mag = std::fabs(diff.exact().to_long_double());
  } else {
    Rational lo = diff.lower(), hi = diff.upper();
    if (lo.sign() <= 0 && hi.sign() >= 0) {
      mag = max(lo.abs(), hi.abs()).to_long_double();
    } else {
      mag = std::fabs(diff.to_long_double());
    }
  }
  return -std::log(mag) / std::log(to_long_double(q));
}

ConvergentSeq convergents(const SlopeValue& w, std::size_t count) {
  require(count >= 1, "convergent count must be positive");
  ContinuedFraction cf = w.partial_quotients(count + 1);
  ConvergentSeq seq;
  seq.entries = fold(cf.quotients);
  seq.terminated = cf.terminated;
  if (seq.entries.size() > count) seq.entries.resize(count);
  if (cf.exhausted && seq.entries.size() < count) {
    int extra = std::max(1, static_cast<int>(count - seq.entries.size()));
    throw PrecisionExhausted("decimal slope certifies only " + std::to_string(seq.entries.size()) + " of " +
                                 std::to_string(count) + " requested convergents",
                             extra);
  }
  if (seq.entries.size() < count) seq.terminated = true;
  fill_betas(w, seq.entries);
  return seq;
}

ConvergentSeq convergents_up_to(const SlopeValue& w, const Integer& q_max) {
  std::size_t n = 48;
  for (;;) {
    ContinuedFraction cf = w.partial_quotients(n);
    std::vector<Convergent> all = fold(cf.quotients);
    bool beyond = !all.empty() && all.back().q > q_max;
    if (beyond || cf.terminated) {
      ConvergentSeq seq;
      for (auto& e : all) {
        seq.entries.push_back(e);
        if (e.q > q_max) break;
      }
      seq.terminated = cf.terminated && !beyond;
      fill_betas(w, seq.entries);
      return seq;
    }
    if (cf.exhausted) {
      long double need = 2 * std::log10(std::max<long double>(2, to_long_double(q_max)));
      int extra = std::max(1, static_cast<int>(std::ceil(need)) - w.certified_digits() + 1);
      throw PrecisionExhausted("decimal slope exhausted before convergent denominators passed " + q_max.get_str(),
                               extra);
    }
    n *= 2;
  }
}

DeltaResult delta(const SlopeValue& w, const Rational& x, std::optional<Integer> q_cap) {
  require(x.sign() > 0, "delta needs x > 0");
  Integer min_cap = (Rational(1) / x).ceil();
  Integer cap = q_cap ? *q_cap : Integer(min_cap + 1);
  require(cap >= min_cap, "q_cap must be at least ceil(1/x) = " + min_cap.get_str());

  // A minimizer q* has ||q w|| < ||q' w|| for every q' < q*, so it is a
  // record of ||q w||: q = 1 or a convergent denominator.
  std::vector<Integer> candidates{1};
  for (const auto& e : convergents_up_to(w, cap).entries)
    if (e.q <= cap && e.q > candidates.back()) candidates.push_back(e.q);

  DeltaResult best;
  bool have = false;
  for (const auto& q : candidates) {
    CertifiedReal v = CertifiedReal(x * Rational(q)) + fractional_norm(w.times(q));
    if (!have || compare(v, best.value) < 0) {
      best.value = v;
      best.argmin_q = q;
      have = true;
    }
  }
  best.q_cap = cap;
  // Certificate: every q > cap has q*x >= (cap+1)*x >= best.
  CertifiedReal tail(x * Rational(Integer(cap + 1)));
  if (compare(tail, best.value) < 0)
    throw Error("internal: delta certificate failed for cap " + cap.get_str());
  return best;
}

}  // namespace flatarc
