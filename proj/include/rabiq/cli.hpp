// rabiq/cli.hpp - command-line entry point
#pragma once

namespace rabiq {

// Parses argv and runs one subcommand. Returns the process exit code:
// 0 success, 1 invalid input or usage, 2 numerical non-convergence.
int run_cli(int argc, char** argv);

} // namespace rabiq
