#pragma once

#include <ostream>

namespace torus_lab::cli {

// Runs the acceptance battery: one pass/fail line per criterion, tolerances
// pinned in the implementation. `fast` skips the long-running criteria.
// Returns 0 when every executed criterion passes, 1 otherwise.
int run_acceptance(bool fast, std::ostream& out);

}  // namespace torus_lab::cli
