#include <numeric>

#include "flatarc/bounds.hpp"

namespace flatarc {

// Each step adds one point at cost a_i, and a primitive vector realizes its
// slope most cheaply, so taking reduced slopes by increasing denominator is
// optimal.
std::int64_t slope_chain_oracle(const SlopeValue& w, std::int64_t ell, long double r, std::int64_t budget) {
  require(ell >= 0, "ell must be nonnegative");
  require(r > 0, "r must be positive");
  Rational width = Rational(ell) / Rational::from_long_double(r);
  std::int64_t steps = 0, remaining = ell, examined = 0;
  for (std::int64_t a = 1; a <= remaining; ++a) {
    CertifiedReal lo = w.times(Integer(static_cast<long>(a)));
    Integer b0 = -(-lo).floor();  // ceil(a w)
    Integer b1 = (lo + CertifiedReal(width * Rational(a))).floor();
    if (b1 < b0) continue;
    Integer span = b1 - b0 + 1;
    if (Integer(budget - examined) < span)
      throw SearchBudgetExceeded("slope chain search needs more than " + std::to_string(budget) + " candidates");
    examined += span.get_si();
    for (Integer b = b0; b <= b1 && remaining >= a; ++b) {
      if (std::gcd(a, b.get_si()) != 1) continue;
      remaining -= a;
      ++steps;
    }
  }
  return steps + 1;
}

}  // namespace flatarc
