#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stieltjes::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;

/// Runs one subcommand (eval, certify, params, convert, transform, moments,
/// report). The JSON report goes to --out or `out`; diagnostics go to `err`.
/// Returns 0 on pass, 2 on a certified failure, 1 on any error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace stieltjes::cli
