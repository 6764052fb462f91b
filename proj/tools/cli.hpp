#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ohash::cli {

enum ExitCode : int { kSuccess = 0, kUsageOrIo = 1, kInapplicable = 2 };

/// Runs the `ohash` command line. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "lo:hi:step", "lo:hi" (step 1) or a comma-separated list.
std::vector<std::size_t> parse_lengths(std::string_view spec);

} // namespace ohash::cli
