#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace motfib {

// Parses the argument list (program name excluded), dispatches to the chosen
// subcommand, and writes the serialized report to `out` (or to the file named
// by --output).  Diagnostics go to `err`.  Returns the process exit code:
// 0 success, 2 bad input or unsupported domain, 3 failed verification or
// internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace motfib
