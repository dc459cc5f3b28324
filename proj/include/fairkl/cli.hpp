#pragma once

namespace fairkl {

// argv-style entry point, exposed so tests can drive commands in-process.
// Exit codes: 0 success, 1 runtime failure, 2 usage or validation error.
int run_cli(int argc, const char* const* argv);

}  // namespace fairkl
