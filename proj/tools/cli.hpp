#pragma once

#include <ostream>

namespace chirptf::cli {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2 };

/// Parses argv and runs one subcommand; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chirptf::cli
