#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sylow {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitBlocked = 2;
inline constexpr int kExitUsage = 3;

/// Runs one command line (without the program name). Payload goes to out,
/// diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sylow
