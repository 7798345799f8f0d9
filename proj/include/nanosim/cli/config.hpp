#pragma once

// JSON experiment configuration. Every scenario publishes its full default
// document; a user file may only set keys that exist there, with matching
// types. That keeps typos from being silently ignored.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace nanosim::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses `text`; syntax errors become ConfigError("<source>:<line>:<col>: ...").
Json parse_json(const std::string& text, const std::string& source);
Json load_json_file(const std::filesystem::path& path);

/// Overlays `patch` onto `base`. Unknown keys and type mismatches throw
/// ConfigError naming the dotted path. Arrays and scalars are replaced.
void merge_strict(Json& base, const Json& patch, const std::string& path = {});

/// Applies one `dotted.path=value` override. The value is read as JSON when
/// it parses as such, otherwise as a bare string.
void apply_override(Json& cfg, const std::string& assignment);

/// Defaults for the scenario named in `user` (or by the preset it names),
/// then `user`, then overrides and an optional seed.
Json resolve_config(const Json& user, const std::vector<std::string>& overrides = {},
                    std::optional<std::uint64_t> seed = std::nullopt);

/// Resolves a --config argument: an existing file, or a preset name.
Json load_config_arg(const std::string& arg);

}  // namespace nanosim::cli
