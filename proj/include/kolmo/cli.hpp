#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kolmo::cli {

inline constexpr int kExitOk = 0;
/// verify: at least one criterion failed.
inline constexpr int kExitCriteriaFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

/// Runs one subcommand. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

} // namespace kolmo::cli
