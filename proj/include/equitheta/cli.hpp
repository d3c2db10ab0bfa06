#pragma once

#include <iosfwd>

namespace equitheta::cli {

enum ExitCode : int { Pass = 0, ConfigError = 1, Stabilization = 2, PropertyFailure = 3, Inconsistent = 4 };

/// Entry point of the `equitheta` tool; reports go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace equitheta::cli
