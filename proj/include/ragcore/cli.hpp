#pragma once

namespace ragcore {

/// Entry point behind tools/main.cpp, callable in-process from tests.
/// Returns 0 on success, 1 on usage errors, 2 on runtime errors.
int run_cli(int argc, const char* const* argv);

}  // namespace ragcore
