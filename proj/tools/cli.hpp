#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hubpath::cli {

/// Runs one command line (args[0] is the program name) and returns the exit
/// status. Normal output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// --threads if given, else HUBPATH_THREADS, else 1.
unsigned resolve_threads(unsigned flag_value);

}  // namespace hubpath::cli
