#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "paramp_cli/config.hpp"

namespace paramp::cli {

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns one of ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs a validated scenario and writes its artifact to `out` (or to
/// config.output.path). `threads` sizes the sweep worker pool.
int run_scenario(const ScenarioConfig& config, unsigned threads, std::ostream& out, std::ostream& err);

/// Worker count: the flag if positive, else hardware concurrency, capped by
/// PARAMP_THREADS when that is set.
unsigned resolve_threads(int flag);

}  // namespace paramp::cli
