#pragma once

#include <string>
#include <vector>

namespace dualsolver {

// Entry point behind the dualsolve binary. Subcommands: sample, learn,
// verify, order-check, interp, compare, plot-params. Returns the process
// exit status: 0 on success, 1 on runtime failure, 2 on usage errors.
int run_command(const std::vector<std::string>& args);

}  // namespace dualsolver
