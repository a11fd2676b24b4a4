#pragma once

#include <string>
#include <vector>

namespace ym {

// Entry point behind the `ym` binary; args exclude the program name.
// Returns the process exit code: 0 success, 1 domain error, 2 numerical
// failure (integration abort, non-convergence, failed checks), 3 I/O
// error, 64 usage.
int run(const std::vector<std::string>& args);

}  // namespace ym
