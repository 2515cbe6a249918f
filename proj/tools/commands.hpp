#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace archetypal::cli {

enum ExitCode : int {
  kOk = 0,
  kPartialFailure = 1,  // some sweep cells or alpha rows failed
  kInputError = 2,      // unreadable files, parse errors, bad settings
  kNumericalError = 3,  // solver or geometry failure
};

int cmd_synth(const Config& cfg);
int cmd_fit(const Config& cfg);
int cmd_eval(const Config& cfg);
int cmd_sweep(const Config& cfg);
int cmd_alpha(const Config& cfg);

// Dispatches by name and maps exceptions to exit codes, printing the
// message to `err`.
int run_command(const std::string& name, const Config& cfg, std::ostream& err);

}  // namespace archetypal::cli
