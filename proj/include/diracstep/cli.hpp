#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace diracstep {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
inline constexpr int numeric = 3;
inline constexpr int io = 4;
}  // namespace exit_code

/// Runs the command line `args` (program name excluded). Results go to `out`
/// unless --out is given; diagnostics go to `err`. SVG is refused when
/// `out_is_terminal` and no --out is set.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool out_is_terminal = false);

}  // namespace diracstep
