#pragma once

#include <map>
#include <string>

namespace aqsim {

// Executes one front-end command ("evolve", "sweep", "berry", "holonomy",
// "gatearray", "aqc", "bound") against a JSON configuration and a JSON
// options object (seed, jobs, tolerance, hbar_units, sweep controls).
// Returns the artifact set as file name -> file body; callers decide where
// the files land.  Output is deterministic: identical inputs give
// byte-identical artifacts, and no timestamps are embedded.
std::map<std::string, std::string> run_command(const std::string& command,
                                               const std::string& config_json,
                                               const std::string& options_json);

}  // namespace aqsim
