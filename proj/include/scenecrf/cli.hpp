#pragma once

#include <string>
#include <vector>

namespace scenecrf {

// Runs the command-line tool on the given arguments (program name excluded).
// Returns the process exit code: 0 on success, 1 on usage errors, 2 when a
// scene file cannot be parsed or fails validation.
int cli_main(const std::vector<std::string>& args);

}  // namespace scenecrf
