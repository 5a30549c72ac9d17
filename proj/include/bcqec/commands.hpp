#pragma once
#include <string>
#include <vector>

#include "bcqec/bench.hpp"

namespace bcqec {

// All benchmark subcommands; "all" runs every other one. Returns 0 on
// success, 1 when --check thresholds fail. Unknown subcommand or bad config
// throws ConfigError.
int run_command(const std::string& name, BenchmarkConfig& cfg);

const std::vector<std::string>& command_names();

}  // namespace bcqec
