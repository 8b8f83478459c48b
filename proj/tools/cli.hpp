#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rmq::cli {

/// Runs one command line (without the program name). Returns the process
/// exit status; diagnostics go to `err`, results to `out`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmq::cli
