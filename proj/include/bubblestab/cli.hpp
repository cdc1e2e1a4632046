#pragma once

namespace bubblestab {

// Parses argv and dispatches one subcommand. Returns the process exit
// status: 0 all asserted inequalities pass, 1 assertion failure (a
// machine-readable JSON failure record goes to stdout), 2 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace bubblestab
