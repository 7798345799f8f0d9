#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nanosim/cli/config.hpp"
#include "nanosim/cli/output.hpp"
#include "nanosim/cli/presets.hpp"
#include "nanosim/cli/scenarios.hpp"

using namespace nanosim;
using namespace nanosim::cli;

namespace {

std::string error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("syntax errors carry line and column") {
    const auto msg = error_of([] { parse_json("{\"a\": 1,\n  \"b\": }", "cfg.json"); });
    CHECK(msg.rfind("cfg.json:2:", 0) == 0);
}

TEST_CASE("strict merge rejects unknown keys and wrong types") {
    Json base = preset_config("sched_hw_vs_timer");
    CHECK(error_of([&] { merge_strict(base, Json::parse(R"({"sched": {"servce_ns": 1}})")); }) ==
          "sched.servce_ns: unknown field");
    CHECK(error_of([&] { merge_strict(base, Json::parse(R"({"sched": {"service_ns": "slow"}})")); })
              .find("sched.service_ns") != std::string::npos);
    merge_strict(base, Json::parse(R"({"sched": {"service_ns": 250}})"));
    CHECK(base["sched"]["service_ns"].get<double>() == 250.0);
}

TEST_CASE("dotted overrides") {
    Json cfg = preset_config("incast_ndp");
    apply_override(cfg, "trimming=false");
    CHECK(cfg["trimming"] == false);
    apply_override(cfg, "incast.clients=10");
    CHECK(cfg["incast"]["clients"] == 10);
    apply_override(cfg, "transport.mode=timeout");
    CHECK(cfg["transport"]["mode"] == "timeout");
    CHECK_THROWS_AS(apply_override(cfg, "incast.nope=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "noequals"), ConfigError);
}

TEST_CASE("resolve layers preset, file, overrides and seed") {
    Json user = Json::parse(R"({"experiment": "bounded_mpt", "seed": 3, "workload": {"num_requests": 100}})");
    Json cfg = resolve_config(user, {"bounded.service_ns=400"}, 9);
    CHECK(cfg["seed"] == 9);
    CHECK(cfg["workload"]["num_requests"] == 100);
    CHECK(cfg["bounded"]["service_ns"].get<double>() == 400.0);
    CHECK(cfg["scheduler"]["restore"] == "never");
    CHECK_NOTHROW(validate(cfg));
    CHECK_THROWS_AS(resolve_config(Json::parse(R"({"seed": 1})")), ConfigError);
    CHECK_THROWS_AS(resolve_config(Json::parse(R"({"experiment": "nope"})")), ConfigError);
    CHECK_THROWS_AS(resolve_config(Json::parse(R"({"experiment": "mica_kv", "schema": 2})")), ConfigError);
}

TEST_CASE("validation reports the offending field") {
    Json cfg = resolve_config(Json{{"experiment", "core_selection"}}, {"selection.p_long=1.5"});
    CHECK(error_of([&] { validate(cfg); }).find("selection.p_long") != std::string::npos);
    Json empty = resolve_config(Json{{"experiment", "mica_kv"}}, {"workload.loads=[]"});
    CHECK(error_of([&] { validate(empty); }) == "workload.loads: empty load grid");
}

TEST_CASE("every preset validates") {
    CHECK(presets().size() == 8);
    for (const auto& pr : presets()) {
        CAPTURE(pr.name);
        Json cfg = resolve_config(Json{{"experiment", pr.name}});
        CHECK_NOTHROW(validate(cfg));
        CHECK(takes_loads(pr.scenario) == !cfg["workload"]["loads"].empty());
    }
    CHECK(find_preset("nope") == nullptr);
}

TEST_CASE("shipped preset files match the built-in presets") {
    const std::filesystem::path dir = NANOSIM_PRESET_DIR;
    for (const auto& pr : presets()) {
        CAPTURE(pr.name);
        const auto path = dir / (pr.name + ".json");
        REQUIRE(std::filesystem::exists(path));
        CHECK(load_json_file(path) == preset_config(pr.name));
        CHECK(resolve_config(load_config_arg(path.string())) == resolve_config(load_config_arg(pr.name)));
    }
}

TEST_CASE("load grids") {
    CHECK(parse_load_grid("0.1,0.5") == std::vector<double>{0.1, 0.5});
    auto g = parse_load_grid("0.1:0.5:0.1");
    REQUIRE(g.size() == 5);
    CHECK(g.back() == doctest::Approx(0.5));
    CHECK_THROWS_AS(parse_load_grid(""), ConfigError);
    CHECK_THROWS_AS(parse_load_grid("0.5:0.1:0.1"), ConfigError);
    CHECK_THROWS_AS(parse_load_grid("-0.1"), ConfigError);
}

TEST_CASE("rendered outputs") {
    Json cfg = resolve_config(Json{{"experiment", "sched_hw_vs_timer"}},
                              {"workload.num_requests=200", "workload.loads=[0.2,0.4,0.6]"});
    auto files = render_outputs(run_config(cfg), cfg);
    for (const char* f : {"config.json", "summary.csv", "samples.csv", "qtrace.csv", "log.txt", "metrics.csv",
                          "nic_metrics.csv", "thread_metrics.csv"}) {
        CHECK(files.count(f) == 1);
    }
    CHECK(first_line(files["summary.csv"]) == "experiment,offered_rps,normalized_load,p50_ns,p99_ns,completed,incomplete");
    CHECK(first_line(files["samples.csv"]) ==
          "experiment,seed,offered_rps,request_id,priority,send_ns,complete_ns,latency_ns");
    CHECK(first_line(files["qtrace.csv"]) == "t_ns,occupancy_bytes,occupancy_pkts,action");
    // 2 policies x 2 priorities x 3 points
    std::istringstream in(files["summary.csv"]);
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 12);
    CHECK(parse_json(files["config.json"], "config.json") == cfg);
}

TEST_CASE("overload is flagged incomplete") {
    Json cfg = resolve_config(Json{{"experiment", "sched_hw_vs_timer"}},
                              {"workload.num_requests=2000", "workload.loads=[1.3]", "sched.policies=[\"hw\"]",
                               "workload.run_limit_ns=200000"});
    auto r = run_config(cfg);
    CHECK(r.incomplete);
}

TEST_CASE("output directories") {
    const auto root = std::filesystem::temp_directory_path() / "nanosim_cli_test";
    std::filesystem::remove_all(root);
    CHECK(output_root("/x/y") == "/x/y");
    auto dir = write_outputs(root, "exp", "t1", {{"a.txt", "hi"}});
    CHECK(dir == root / "exp" / "t1");
    std::ifstream f(dir / "a.txt");
    std::string s;
    f >> s;
    CHECK(s == "hi");
    auto stamped = write_outputs(root, "exp", "", {{"a.txt", "x"}});
    auto again = write_outputs(root, "exp", "", {{"a.txt", "x"}});
    CHECK(stamped != again);
    CHECK_THROWS(write_outputs(root, "exp", "a/b", {}));
    std::filesystem::remove_all(root);
}
