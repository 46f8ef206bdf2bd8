#pragma once

#include <iosfwd>

namespace modalcoh::cli {

inline constexpr int kExitUsage = 64;
inline constexpr int kExitDomain = 65;

// Runs one batch invocation. Exit codes: 0 success (eq: Equal, prove:
// Proved), 1 negative answer, 2 eq type mismatch, 64 usage, 65 domain error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modalcoh::cli
