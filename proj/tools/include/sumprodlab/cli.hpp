#pragma once

namespace sumprodlab {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

/// Parses argv, runs one subcommand and writes its report. Returns the
/// process exit code.
int run_cli(int argc, char** argv);

}  // namespace sumprodlab
