#pragma once

#include <string>
#include <vector>

#include "nanosim/cli/config.hpp"

namespace nanosim::cli {

struct Preset {
    std::string name;
    std::string scenario;
    std::string description;
};

/// The built-in experiments, in catalog order.
const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

/// Complete default document for a scenario kind; throws ConfigError for an
/// unknown kind.
Json scenario_defaults(const std::string& scenario);
/// Scenario defaults with the preset's own settings applied.
Json preset_config(const std::string& name);

std::vector<std::string> scenario_kinds();

}  // namespace nanosim::cli
