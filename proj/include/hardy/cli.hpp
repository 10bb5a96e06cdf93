#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Subcommands: bound, eval,
/// optimize, scan, verify, oracle.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
