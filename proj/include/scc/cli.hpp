#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scc::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFalse = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name. Machine output goes
/// to `out`, diagnostics to `err`; "-" as an input path reads `in`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace scc::cli
