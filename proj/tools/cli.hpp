#pragma once

#include <string>
#include <vector>

namespace floquet {

/// Runs the command line; argv[0] is the program name. Returns 0 on success,
/// 2 on a validation error and 1 on a runtime error. Diagnostics go to stderr.
int cli_main(const std::vector<std::string>& argv);

}  // namespace floquet
