#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "nanosim/cli/config.hpp"
#include "nanosim/workload/experiments.hpp"

namespace nanosim::cli {

/// File name -> contents for one run directory.
using OutputFiles = std::map<std::string, std::string>;

OutputFiles render_outputs(const ExperimentResult& result, const Json& cfg);

/// Output root: `explicit_root` if set, else $NANOSIM_OUT, else "out".
std::filesystem::path output_root(const std::string& explicit_root);

/// Writes `files` under <root>/<experiment>/<tag>; an empty tag becomes a
/// UTC timestamp (with a numeric suffix if that directory exists).
std::filesystem::path write_outputs(const std::filesystem::path& root, const std::string& experiment,
                                    const std::string& tag, const OutputFiles& files);

}  // namespace nanosim::cli
