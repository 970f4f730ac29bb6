#pragma once

#include <stdexcept>
#include <string>

namespace flatarc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A hypothesis of a bound or construction does not hold. The message names
// the violated inequality.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class TooFewFareyFractions : public HypothesisViolated {
 public:
  using HypothesisViolated::HypothesisViolated;
};

class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, int extra_digits)
      : Error(what), extra_digits_(extra_digits) {}
  // Estimated number of additional certified digits that would settle the
  // comparison that failed.
  int extra_digits() const { return extra_digits_; }

 private:
  int extra_digits_;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class PlacementInfeasible : public Error {
 public:
  using Error::Error;
};

class ToleranceUnresolvable : public Error {
 public:
  using Error::Error;
};

class SmoothingWindowInfeasible : public Error {
 public:
  using Error::Error;
};

// Throws InvalidInput with `what` unless `cond` holds.
void require(bool cond, const std::string& what);

// Throws HypothesisViolated naming the inequality unless `cond` holds.
void require_hypothesis(bool cond, const std::string& inequality);

}  // namespace flatarc
