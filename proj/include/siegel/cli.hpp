#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace siegel::cli {

// Exit codes. kVerificationFailed means the computation finished and an assertion failed.
inline constexpr int kSuccess = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericalFailure = 3;

// args excludes the program name. Data goes to out, diagnostics to err
// (unless --out redirects data to a file).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace siegel::cli
