#pragma once

#include <iosfwd>

namespace ens::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { holds = 0, fails = 1, input_error = 2, timed_out = 3 };

/// Runs one command line (argv[0] is the program name). All output goes to
/// `out` and `err`; nothing depends on the clock except the deadline.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ens::cli
