#include "nanosim/cli/presets.hpp"

#include "nanosim/sim/engine.hpp"

namespace nanosim::cli {

namespace {

Json grid(std::initializer_list<double> v) { return Json(std::vector<double>(v)); }

Json base(const std::string& name, bool mac, Json loads) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["experiment"] = name;
    j["seed"] = 1u;
    j["fabric"] = {{"rate_gbps", 200.0}, {"propagation_ns", 43.0}};
    j["pipeline"] = {{"ingress_ns", 7.0},
                     {"egress_ns", 6.0},
                     {"mac_rx_ns", mac ? 26.0 : 0.0},
                     {"mac_tx_ns", mac ? 26.0 : 0.0}};
    j["transport"] = {{"mode", "ndp"},          {"mtu_payload", 1024u},   {"initial_window_pkts", 0u},
                      {"rtt_estimate_ns", 3000.0}, {"pull_interval_ns", 0.0}, {"rto_ns", 12000.0},
                      {"max_retransmissions", 16u}};
    j["scheduler"] = {{"mode", "hw"},
                      {"timer_period_ns", 5000.0},
                      {"ctx_switch_cycles", 160u},
                      {"mpt_enabled", true},
                      {"mpt_bound_ns", 1000.0},
                      {"restore", "next_message"},
                      {"idle_rotation", true},
                      {"idle_timeout_ns", 5000.0},
                      {"max_threads", 4u}};
    j["workload"] = {{"num_requests", 20000u}, {"warmup_discard", 0u}, {"run_limit_ns", 0.0}, {"loads", loads}};
    return j;
}

Json loopback_latency() {
    Json j = base("loopback_latency", true, Json::array());
    j["loopback"] = {{"message_bytes", 8u}, {"app_service_ns", 0.0}};
    return j;
}

Json core_throughput() {
    Json j = base("core_throughput", false, Json::array());
    j["throughput"] = {{"message_bytes", 1024u},         {"fixed_cycles_per_word", 1u},
                       {"variable_cycles_per_word", 3u}, {"cycles_per_msg", 6u},
                       {"warmup_ns", 2000.0},            {"window_ns", 10000.0},
                       {"rate_frame_bytes", 72u}};
    return j;
}

Json sched_hw_vs_timer() {
    Json j = base("sched_hw_vs_timer", false, grid({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.96}));
    j["sched"] = {{"service_ns", 500.0}, {"high_priority_fraction", 0.2}, {"policies", {"hw", "timer"}}};
    return j;
}

Json bounded_mpt() {
    Json j = base("bounded_mpt", false, grid({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}));
    j["scheduler"]["restore"] = "never";
    j["bounded"] = {{"service_ns", 500.0},
                    {"long_service_ns", 5000.0},
                    {"misbehave_period", 100u},
                    {"misbehave_phase", 1u},
                    {"well_behaved_fraction", 0.42},
                    {"variants", {"bounded", "unbounded"}}};
    return j;
}

Json core_selection() {
    Json j = base("core_selection", false, grid({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.98}));
    j["selection"] = {{"num_cores", 4u},           {"short_service_ns", 500.0}, {"long_service_ns", 5000.0},
                      {"p_long", 0.005},           {"jbsq_n", 2u},
                      {"policies", {"rss", "jbsq", "jbsq_pre"}}};
    return j;
}

Json incast_ndp() {
    Json j = base("incast_ndp", false, Json::array());
    j["fabric"]["propagation_ns"] = 750.0;
    j["trimming"] = true;
    j["incast"] = {{"clients", 80u},
                   {"message_bytes", 1024u},
                   {"queue_capacity_pkts", 74u},
                   {"queue_capacity_bytes", 0u},
                   {"limit_ns", 500000.0}};
    return j;
}

Json mica_kv() {
    Json j = base("mica_kv", true, grid({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}));
    j["kv"] = {{"num_cores", 4u},          {"keys_per_core", 10000u},   {"key_bytes", 16u},
               {"value_bytes", 512u},      {"read_service_ns", 414.0},  {"write_service_ns", 414.0},
               {"write_fraction", 0.5},    {"policies", {"jbsq", "static"}}};
    return j;
}

Json chain_replication() {
    Json j = base("chain_replication", true, grid({0.05, 0.1, 0.2, 0.3, 0.4, 0.5}));
    j["chain"] = {{"replicas", 3u},          {"client_compute_ns", 130.0}, {"write_service_ns", 128.52},
                  {"read_service_ns", 128.52}, {"keys", 10000u},           {"key_bytes", 16u},
                  {"value_bytes", 64u},      {"read_fraction", 0.1}};
    return j;
}

struct Entry {
    Preset preset;
    Json (*make)();
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {{"loopback_latency", "loopback_latency", "single 72B request: internal loopback and wire-to-wire latency"},
         loopback_latency},
        {{"core_throughput", "core_throughput", "single-core RX/TX goodput for 1KB messages and NIC packet rate"},
         core_throughput},
        {{"sched_hw_vs_timer", "sched_hw_vs_timer", "p99 vs load, hardware vs 5us timer thread scheduling"},
         sched_hw_vs_timer},
        {{"bounded_mpt", "bounded_mpt", "p99 vs load, well-behaved vs misbehaving thread, bound on and off"},
         bounded_mpt},
        {{"core_selection", "core_selection", "p99 vs load for RSS, JBSQ and JBSQ with priorities on 4 cores"},
         core_selection},
        {{"incast_ndp", "incast_ndp", "80-to-1 incast, bottleneck queue trace; trimming=false for the baseline"},
         incast_ndp},
        {{"mica_kv", "mica_kv", "key-value store on 4 cores, JBSQ vs static key ownership"}, mica_kv},
        {{"chain_replication", "chain_replication", "3-way chain replication latency vs load"}, chain_replication},
    };
    return e;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> p = [] {
        std::vector<Preset> out;
        for (const auto& e : entries()) out.push_back(e.preset);
        return out;
    }();
    return p;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

Json scenario_defaults(const std::string& scenario) {
    for (const auto& e : entries()) {
        if (e.preset.scenario == scenario) return e.make();
    }
    throw ConfigError("experiment: unknown scenario '" + scenario + "'");
}

Json preset_config(const std::string& name) {
    for (const auto& e : entries()) {
        if (e.preset.name == name) return e.make();
    }
    throw ConfigError("experiment: unknown preset '" + name + "' (see `nanosim list`)");
}

std::vector<std::string> scenario_kinds() {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.push_back(e.preset.scenario);
    return out;
}

}  // namespace nanosim::cli
