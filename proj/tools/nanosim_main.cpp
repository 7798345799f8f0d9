// nanosim command-line front end.

#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "nanosim/cli/config.hpp"
#include "nanosim/cli/output.hpp"
#include "nanosim/cli/presets.hpp"
#include "nanosim/cli/scenarios.hpp"
#include "nanosim/sim/engine.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIncomplete = 3;

struct RunOptions {
    std::string config;
    std::string positional;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> sets;
    std::string out;
    std::string tag;
    std::optional<std::string> loads;
    bool strict = false;
    bool dry_run = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("config_file", o.positional, "Config file or preset name");
    cmd->add_option("--config,-c", o.config, "Config file or preset name");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--set", o.sets, "Override a field: dotted.path=value")->allow_extra_args(false);
    cmd->add_option("--out", o.out, "Output root (default $NANOSIM_OUT, else ./out)");
    cmd->add_option("--tag", o.tag, "Run directory name (default: UTC timestamp)");
    cmd->add_flag("--strict", o.strict, "Exit 3 if any request is left unanswered");
    cmd->add_flag("--dry-run", o.dry_run, "Print the resolved config and exit");
}

int execute(RunOptions& o, bool sweep) {
    using namespace nanosim::cli;
    const std::string arg = !o.config.empty() ? o.config : o.positional;
    if (arg.empty()) throw nanosim::ConfigError("no config given (use --config FILE or a preset name)");
    Json cfg = resolve_config(load_config_arg(arg), o.sets, o.seed);
    const std::string exp = cfg["experiment"].get<std::string>();
    if (sweep) {
        if (!takes_loads(exp)) throw nanosim::ConfigError(exp + " does not sweep offered load");
        if (o.loads) cfg["workload"]["loads"] = parse_load_grid(*o.loads);
        if (cfg["workload"]["loads"].empty()) throw nanosim::ConfigError("workload.loads: empty load grid");
    }
    validate(cfg);
    if (o.dry_run) {
        std::cout << cfg.dump(2) << "\n";
        return 0;
    }
    const auto result = run_config(cfg);
    const auto dir = write_outputs(output_root(o.out), exp, o.tag, render_outputs(result, cfg));
    for (const auto& line : result.log) std::cerr << line << "\n";
    std::cout << dir.string() << "\n";
    if (result.incomplete && o.strict) return kExitIncomplete;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nanosim: discrete-event simulator of nanoPU hosts and a trimming fabric"};
    app.require_subcommand(1);

    RunOptions run_opts, sweep_opts;
    auto* run = app.add_subcommand("run", "Run one experiment");
    add_run_options(run, run_opts);
    auto* sweep = app.add_subcommand("sweep", "Run an experiment over a load grid");
    add_run_options(sweep, sweep_opts);
    sweep->add_option("--loads", sweep_opts.loads, "Load grid: a,b,c or start:stop:step (fractions of capacity)");

    std::string show;
    auto* list = app.add_subcommand("list", "List presets");
    list->add_option("--show", show, "Print a preset's full config");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*list) {
            if (!show.empty()) {
                std::cout << nanosim::cli::preset_config(show).dump(2) << "\n";
                return 0;
            }
            for (const auto& p : nanosim::cli::presets()) std::printf("%-18s %s\n", p.name.c_str(), p.description.c_str());
            return 0;
        }
        if (*run) return execute(run_opts, false);
        return execute(sweep_opts, true);
    } catch (const nanosim::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
