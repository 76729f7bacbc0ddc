#pragma once

#include <ostream>

namespace modvar {

/// Runs one CLI command. Returns the process exit code: 0 success or pass,
/// 1 check failed, 2 input error, 3 resource refusal.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modvar
