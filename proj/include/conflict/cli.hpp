#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conflict::cli {

/// Parses and dispatches one command line (without the program name).
/// Exit codes: 0 success, 2 flag/validation error, 1 runtime error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace conflict::cli
