#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flatarc_cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kHypothesis = 1;
inline constexpr int kPrecision = 2;
inline constexpr int kBudget = 3;
inline constexpr int kUsage = 64;
inline constexpr int kInternal = 70;
inline constexpr int kIo = 74;

// Arguments without the program name. Reports go to `out`, diagnostics and
// usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Value of "<c>*r^<e>", "r^<e>" or a plain number at the given r.
double eval_length(const std::string& expr, double r);

}  // namespace flatarc_cli
