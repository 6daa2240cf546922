#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riskaudit {

/// Command-line entry point without the program name. Returns the process
/// exit code: 0 ok, 1 violations found, 2 usage or input error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace riskaudit
