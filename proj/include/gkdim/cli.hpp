#pragma once

#include <iosfwd>

namespace gkdim {

/// Entry point of the `gkdim` tool. Returns 0 when every check passes, 1 on
/// check failures and 2 on configuration errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gkdim
