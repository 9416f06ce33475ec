#pragma once

#include <string>

#include "config.hpp"

namespace torus_lab::cli {

struct RunOutcome {
  int exit_code = 0;    // 0 success, 1 invalid config, 2 budget abort
  std::string csv;      // full CSV artifact (metadata block + rows)
  std::string message;  // human-readable status, one line
};

// Validates cfg, executes the named experiment, and renders the CSV with its
// metadata comment block. Never throws: failures are reported through
// exit_code/message and leave csv empty.
RunOutcome run_experiment(const Config& cfg);

}  // namespace torus_lab::cli
