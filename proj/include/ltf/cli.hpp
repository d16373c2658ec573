#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltf {

/// Parses and runs one command line (program name excluded). Reports go to
/// out, error JSON to err. Returns the process exit code: 0 success, 1 bad
/// usage or bad input, 2 the command ran but a verification or approximation
/// target was missed.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ltf
