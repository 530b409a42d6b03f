#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blindsearch {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitData = 3,
    kExitDegenerateFit = 4,
};

/// Runs the command line in-process. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blindsearch
