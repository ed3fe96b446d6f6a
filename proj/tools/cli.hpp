#pragma once

namespace predt {

/// Full command-line entry point (subcommands simulate / mc / sweep /
/// certify / gains). Returns the process exit code: 0 success, 1 verdict
/// failure, 2 usage or config error.
int run_cli(int argc, const char* const* argv);

}  // namespace predt
