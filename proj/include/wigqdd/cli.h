#pragma once

namespace wigqdd {

/// Entry point of the `wigqdd` tool. Exit codes: 0 success, 1 usage,
/// 2 configuration error, 3 numerical failure.
int run_cli(int argc, char** argv);

}  // namespace wigqdd
