#pragma once

#include <iosfwd>

namespace polydyn {

inline constexpr const char* kVersion = "0.1.0";

/// Runs the polydyn command line. Returns 0 on success, 1 on validation or
/// law failures and 2 on usage or file errors.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polydyn
