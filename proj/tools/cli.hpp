#pragma once

#include <iosfwd>

namespace morph::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_io = 2;

/// Runs the `morph` command line. Streams are injected so tests can drive it.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace morph::cli
