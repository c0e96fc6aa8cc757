#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace foodbank {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitSolver = 3,
    kExitConfig = 4,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace foodbank
