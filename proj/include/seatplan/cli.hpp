#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seatplan {

// Exit codes of the command-line driver.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitInfeasible = 4;

/// Entry point of the `seatplan` tool: generate, discover, plan, bench and
/// graph subcommands. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seatplan
