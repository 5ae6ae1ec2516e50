#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ipbounds {

/// Test seams; the installed tool always uses the defaults.
struct CliHooks {
    double fault_scale = 1.0;  // multiplies every DERIVED branch value during fuzz
};

/// Exit codes: 0 success, 1 a DERIVED inequality was violated, 2 usage, parse or I/O error.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliHooks& hooks = {});

}  // namespace ipbounds
