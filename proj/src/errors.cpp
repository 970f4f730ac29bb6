#include "flatarc/errors.hpp"

namespace flatarc {

void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidInput(what);
}

void require_hypothesis(bool cond, const std::string& inequality) {
  if (!cond) throw HypothesisViolated("hypothesis violated: " + inequality);
}

}  // namespace flatarc
