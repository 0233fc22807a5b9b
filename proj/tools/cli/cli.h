#pragma once

#include <iosfwd>

namespace refgame::cli {

// Entry point shared by the binary and the tests. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace refgame::cli
