#pragma once

#include <ostream>

namespace simsched::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kClaimFailed = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kUnsupported = 3;
inline constexpr int kBudget = 4;

/// Runs the `simsched` command line. Never throws; all diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace simsched::cli
