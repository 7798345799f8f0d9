#include "nanosim/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nanosim/cli/presets.hpp"
#include "nanosim/sim/engine.hpp"

namespace nanosim::cli {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const char* kind_name(const Json& v) {
    if (v.is_boolean()) return "boolean";
    if (v.is_number()) return "number";
    if (v.is_string()) return "string";
    if (v.is_array()) return "array";
    if (v.is_object()) return "object";
    return "null";
}

/// Checks `value` can stand in for `base` and returns it converted.
Json coerce(const Json& base, const Json& value, const std::string& path) {
    if (base.is_number_integer() || base.is_number_unsigned()) {
        if (value.is_number_integer() || value.is_number_unsigned()) {
            if (base.is_number_unsigned() && value.is_number_integer() && value.get<std::int64_t>() < 0) {
                throw ConfigError(path + ": expected a non-negative integer");
            }
            return value;
        }
        if (value.is_number_float()) {
            const double d = value.get<double>();
            if (std::floor(d) != d) throw ConfigError(path + ": expected an integer, got " + value.dump());
            if (base.is_number_unsigned() && d < 0) throw ConfigError(path + ": expected a non-negative integer");
            return base.is_number_unsigned() ? Json(static_cast<std::uint64_t>(d)) : Json(static_cast<std::int64_t>(d));
        }
    } else if (base.is_number_float()) {
        if (value.is_number()) return Json(value.get<double>());
    } else if (std::string(kind_name(base)) == kind_name(value)) {
        if (base.is_array() && !base.empty()) {
            Json out = Json::array();
            for (std::size_t i = 0; i < value.size(); ++i) {
                out.push_back(coerce(base.front(), value[i], path + "[" + std::to_string(i) + "]"));
            }
            return out;
        }
        return value;
    }
    throw ConfigError(path + ": expected " + kind_name(base) + ", got " + kind_name(value));
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        if (auto p = what.rfind(": "); p != std::string::npos) what = what.substr(p + 2);
        throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
    }
}

Json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path.string());
}

void merge_strict(Json& base, const Json& patch, const std::string& path) {
    if (!patch.is_object()) throw ConfigError((path.empty() ? "config" : path) + ": expected object");
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        const std::string here = join(path, it.key());
        if (!base.contains(it.key())) throw ConfigError(here + ": unknown field");
        Json& slot = base[it.key()];
        if (slot.is_object()) {
            merge_strict(slot, it.value(), here);
        } else {
            slot = coerce(slot, it.value(), here);
        }
    }
}

void apply_override(Json& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set " + assignment + ": expected key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    Json value;
    try {
        value = Json::parse(raw);
    } catch (const Json::parse_error&) {
        value = raw;
    }
    // Build {"a": {"b": value}} so the merge does all the checking.
    std::vector<std::string> parts;
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, '.');) {
        if (part.empty()) throw ConfigError("--set " + assignment + ": empty path component");
        parts.push_back(part);
    }
    Json patch = value;
    for (auto p = parts.rbegin(); p != parts.rend(); ++p) patch = Json{{*p, patch}};
    merge_strict(cfg, patch);
}

Json resolve_config(const Json& user, const std::vector<std::string>& overrides, std::optional<std::uint64_t> seed) {
    if (!user.is_object()) throw ConfigError("config: expected a JSON object");
    if (!user.contains("experiment") || !user["experiment"].is_string()) {
        throw ConfigError("experiment: required string naming a preset (see `nanosim list`)");
    }
    if (user.contains("schema")) {
        const Json& s = user["schema"];
        if (!s.is_number_integer() || s.get<int>() != kSchemaVersion) {
            throw ConfigError("schema: unsupported version " + s.dump() + " (expected " +
                              std::to_string(kSchemaVersion) + ")");
        }
    }
    Json cfg = preset_config(user["experiment"].get<std::string>());
    merge_strict(cfg, user);
    for (const auto& o : overrides) apply_override(cfg, o);
    if (seed) cfg["seed"] = *seed;
    return cfg;
}

Json load_config_arg(const std::string& arg) {
    if (std::filesystem::exists(arg)) return load_json_file(arg);
    if (find_preset(arg)) return Json{{"experiment", arg}};
    throw ConfigError("no config file or preset named '" + arg + "'");
}

}  // namespace nanosim::cli
