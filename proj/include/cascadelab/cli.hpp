#pragma once

#include <string>
#include <vector>

namespace cascadelab::cli {

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInstability = 3;

// Runs one invocation: parses `args` (argv without the program name),
// dispatches to the subcommand, writes outputs under --out, and returns the
// exit code. On error after parsing, the manifest is still written with the
// error recorded.
int run_cli(const std::vector<std::string>& args);

} // namespace cascadelab::cli
