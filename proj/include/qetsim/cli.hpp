#pragma once

namespace qetsim {

// Exit codes: 0 success, 2 config/validation error, 3 numerical failure,
// 4 I/O error.
int run_cli(int argc, const char* const* argv);

}  // namespace qetsim
