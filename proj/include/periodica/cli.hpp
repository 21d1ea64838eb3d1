#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace periodica {

// Runs one CLI invocation. `args` excludes the program name. Results go to
// `out`, diagnostics and warnings to `err`. Returns 0 on success, 1 on
// input errors (including flag parsing), 2 on internal invariant failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace periodica
