#pragma once

// Command-line front end: subcommands solve, ineq, kss, picard, lifespan, norms.
//
// Exit codes: 0 success, 2 bad parameters or unusable input, 3 an asserted
// inequality or contraction failed, 1 anything else.

namespace glassey::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitAssertion = 3;

int run(int argc, const char* const* argv);

}  // namespace glassey::cli
