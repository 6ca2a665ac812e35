#pragma once

#include <string>
#include <vector>

namespace letterfit::cli {

/// Runs one subcommand (args exclude the program name). Returns the process
/// exit code; on failure a one-line diagnostic goes to stderr and any files
/// this invocation created are removed.
int run(const std::vector<std::string>& args);

} // namespace letterfit::cli
