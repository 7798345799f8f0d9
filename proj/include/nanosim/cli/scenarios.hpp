#pragma once

#include <string>
#include <vector>

#include "nanosim/cli/config.hpp"
#include "nanosim/workload/experiments.hpp"

namespace nanosim::cli {

/// Whether the scenario sweeps offered load.
bool takes_loads(const std::string& scenario);

/// Checks a resolved document by building the scenario parameters from it.
void validate(const Json& cfg);

/// Typed parameters from a resolved document.
CommonParams common_params(const Json& cfg);
BoundedParams bounded_params(const Json& cfg);
ChainParams chain_params(const Json& cfg);

/// Runs a resolved configuration.
ExperimentResult run_config(const Json& cfg);

/// Parses "0.1,0.2" or "start:stop:step" into a load grid.
std::vector<double> parse_load_grid(const std::string& spec);

}  // namespace nanosim::cli
