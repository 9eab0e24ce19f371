#pragma once

#include <ostream>

namespace spinrotor::cli {

// Full command-line entry point, separated from main() so tests can drive it
// with captured streams. Returns the process exit code: 0 on success, 1 when
// a computation or verification fails, 2 on usage or configuration errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinrotor::cli
