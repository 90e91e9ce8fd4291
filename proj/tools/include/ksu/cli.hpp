#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ksu::cli {

enum ExitCode : int {
    ok = 0,
    usage = 1,
    breach = 2,
    numerical = 3,
};

// Runs the `ksu` command line in-process. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ksu::cli
