// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Each check runs the shipped preset through the same
// resolve/run path as the command line tool.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lossy_pair.hpp"
#include "nanosim/cli/config.hpp"
#include "nanosim/cli/output.hpp"
#include "nanosim/cli/presets.hpp"
#include "nanosim/cli/scenarios.hpp"
#include "nanosim/net/link.hpp"

using namespace nanosim;
using cli::Json;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& s) {
        if (pass) detail += (detail.empty() ? "" : "; ") + s;
    }
};

std::string num(double v, int digits = 3) { return fmt_fixed(v, digits); }

Json preset(const std::string& name, const std::vector<std::string>& overrides = {},
            std::optional<std::uint64_t> seed = std::nullopt) {
    return cli::resolve_config(Json{{"experiment", name}}, overrides, seed);
}

ExperimentResult run(const std::string& name, const std::vector<std::string>& overrides = {},
                     std::optional<std::uint64_t> seed = std::nullopt) {
    return cli::run_config(preset(name, overrides, seed));
}

double metric(const ExperimentResult& r, const std::string& experiment, const std::string& name) {
    for (const auto& m : r.metrics) {
        if (m.experiment == experiment && m.metric == name) return m.value;
    }
    throw std::runtime_error("metric " + experiment + " " + name + " missing");
}

const SummaryRow& row(const ExperimentResult& r, const std::string& series, double load) {
    for (const auto& s : r.summary) {
        if (s.experiment == series && std::abs(s.normalized_load - load) < 1e-9) return s;
    }
    throw std::runtime_error("summary row " + series + " at " + num(load) + " missing");
}

std::vector<double> loads_of(const ExperimentResult& r, const std::string& series) {
    std::vector<double> out;
    for (const auto& s : r.summary) {
        if (s.experiment == series) out.push_back(s.normalized_load);
    }
    return out;
}

bool sustained(const ExperimentResult& r, const std::string& series, double load) {
    return metric(r, series + "/load=" + fmt_fixed(load, 3), "sustained") == 1.0;
}

SimTime ser(std::uint32_t payload, std::uint64_t rate) { return serialization_time(frame_bytes(payload), rate); }

// ---------------------------------------------------------------------------

Verdict loopback_latency() {
    Verdict v;
    auto r = run("loopback_latency");
    const double lb = metric(r, "loopback_latency", "internal_loopback_ns");
    const double w2w = metric(r, "loopback_latency", "wire_to_wire_ns");
    v.require(lb == 13.0, "internal loopback " + num(lb) + "ns != 13ns");
    v.require(w2w == 65.0, "wire-to-wire " + num(w2w) + "ns != 65ns");
    v.require(metric(r, "loopback_latency", "request_frame_bytes") == 72.0, "request frame is not 72B");
    v.note("loopback " + num(lb) + "ns, wire-to-wire " + num(w2w) + "ns");
    return v;
}

Verdict throughput() {
    Verdict v;
    auto r = run("core_throughput");
    const double frx = metric(r, "core_throughput/fixed", "rx_gbps");
    const double ftx = metric(r, "core_throughput/fixed", "tx_gbps");
    const double vrx = metric(r, "core_throughput/variable", "rx_gbps");
    const double vtx = metric(r, "core_throughput/variable", "tx_gbps");
    v.require(frx >= 190.0, "fixed RX " + num(frx) + " < 190 Gb/s");
    v.require(ftx >= 195.0, "fixed TX " + num(ftx) + " < 195 Gb/s");
    v.require(std::abs(vrx - 68.0) <= 5.0, "variable RX " + num(vrx) + " outside 68 +/- 5 Gb/s");
    v.require(std::abs(vtx - 68.0) <= 5.0, "variable TX " + num(vtx) + " outside 68 +/- 5 Gb/s");
    v.note("fixed RX " + num(frx, 1) + " TX " + num(ftx, 1) + ", variable RX " + num(vrx, 1) + " TX " +
           num(vtx, 1) + " Gb/s");
    return v;
}

Verdict packet_rate() {
    Verdict v;
    auto r = run("core_throughput");
    const double computed = metric(r, "core_throughput/nic", "packet_rate_computed") / 1e6;
    const double measured = metric(r, "core_throughput/nic", "packet_rate_measured") / 1e6;
    const double oracle = 200e9 / (72.0 * 8.0) / 1e6;
    v.require(std::abs(computed - oracle) < 1e-6, "computed " + num(computed) + " Mpps != " + num(oracle));
    v.require(std::abs(computed - 347.2) < 0.05, "computed " + num(computed) + " Mpps is not 347.2");
    v.require(measured >= 345.0, "measured " + num(measured) + " Mpps < 345");
    v.note("computed " + num(computed, 2) + " Mpps, measured " + num(measured, 2) + " Mpps");
    return v;
}

Verdict scheduling() {
    Verdict v;
    auto r = run("sched_hw_vs_timer");
    const std::string hw0 = "sched_hw_vs_timer/hw/prio0";
    const std::string tm0 = "sched_hw_vs_timer/timer/prio0";
    const auto& top = row(r, hw0, 0.96);
    v.require(std::abs(top.offered_rps - 0.96 * 2e6) < 1.0, "96% point is not 1.92 Mrps");
    v.require(sustained(r, hw0, 0.96), "hw does not sustain 96% load");
    v.require(top.p99_ns <= 1500.0, "hw prio0 p99 at 96% = " + num(top.p99_ns) + "ns > 1500ns");
    const double hw_low = row(r, hw0, 0.2).p99_ns;
    const double tm_low = row(r, tm0, 0.2).p99_ns;
    v.require(tm_low >= 4.0 * hw_low, "timer/hw prio0 p99 ratio at 20% = " + num(tm_low / hw_low, 2) + " < 4");
    v.note("hw prio0 p99 at 96% " + num(top.p99_ns, 1) + "ns; timer/hw at 20% " + num(tm_low / hw_low, 2) + "x");
    return v;
}

Verdict bounded_mpt() {
    Verdict v;
    const Json base = preset("bounded_mpt");
    const double capacity = bounded_capacity(cli::bounded_params(base));
    // The preset grid plus the exact 1.9 Mrps point.
    Json loads = base["workload"]["loads"];
    const double top_load = 1.9e6 / capacity;
    loads.push_back(top_load);
    auto r = cli::run_config(preset("bounded_mpt", {"workload.loads=" + loads.dump()}));
    double worst = 0;
    for (double l : loads_of(r, "bounded_mpt/bounded/well_behaved")) {
        const auto& s = row(r, "bounded_mpt/bounded/well_behaved", l);
        if (s.offered_rps > 1.9e6 + 1.0) continue;
        worst = std::max(worst, s.p99_ns);
        v.require(s.p99_ns <= 2150.0, "bounded well-behaved p99 at " + num(s.offered_rps / 1e6) + " Mrps = " +
                                          num(s.p99_ns) + "ns");
        v.require(s.incomplete == 0, "bounded well-behaved requests unanswered at " + num(l));
    }
    double best_unbounded = 1e300;
    for (double l : loads_of(r, "bounded_mpt/unbounded/well_behaved")) {
        if (l < 0.5) continue;
        const auto& s = row(r, "bounded_mpt/unbounded/well_behaved", l);
        best_unbounded = std::min(best_unbounded, s.p99_ns);
        v.require(s.p99_ns > 5000.0, "unbounded well-behaved p99 at " + num(l) + " = " + num(s.p99_ns) + "ns");
    }
    std::uint64_t violations = 0, samples = 0;
    SimTime worst_slack = SimTime::max();
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        BoundCheckParams bp;
        bp.common = cli::bounded_params(base).common;
        bp.seed = seed;
        auto b = run_bound_check(bp);
        violations += b.violations;
        samples += b.samples;
        if (b.max_latency <= b.bound) worst_slack = std::min(worst_slack, b.bound - b.max_latency);
        // independent recomputation of the bound from its parts
        const SimTime x = bp.common.sched.mpt_bound;
        const SimTime c = bp.common.sched.ctx_switch;
        v.require(b.bound == b.nic_latency + x * b.k + c * (b.k - 1), "bound formula mismatch for seed " +
                                                                            std::to_string(seed));
    }
    v.require(violations == 0, std::to_string(violations) + " bound violations over 100 seeds");
    v.require(samples > 0, "no bound-check samples");
    v.note("worst bounded p99 " + num(worst, 1) + "ns up to 1.9 Mrps; unbounded p99 >= " + num(best_unbounded, 1) +
           "ns at >= 50%; 0 violations in " + std::to_string(samples) + " samples");
    return v;
}

Verdict core_selection() {
    Verdict v;
    auto r = run("core_selection");
    const std::string rss = "core_selection/rss", jbsq = "core_selection/jbsq", pre = "core_selection/jbsq_pre";
    for (double l : loads_of(r, rss)) {
        const double a = row(r, jbsq, l).p99_ns, b = row(r, rss, l).p99_ns;
        v.require(a <= b, "p99 jbsq " + num(a) + " > rss " + num(b) + " at " + num(l));
    }
    auto pre_loads = loads_of(r, pre);
    const double top = *std::max_element(pre_loads.begin(), pre_loads.end());
    v.require(top >= 0.98, "grid does not reach 98%");
    v.require(sustained(r, pre, top), "jbsq_pre does not sustain " + num(top));
    const double ratio = row(r, rss, 0.6).p99_ns / row(r, pre, 0.6).p99_ns;
    v.require(ratio >= 3.0, "rss/jbsq_pre p99 at 60% = " + num(ratio, 2) + " < 3");
    v.note("rss/jbsq_pre p99 at 60% " + num(ratio, 2) + "x; jbsq_pre sustained at " + num(top, 2));
    return v;
}

Verdict incast() {
    Verdict v;
    auto ndp = run("incast_ndp");
    auto tmo = run("incast_ndp", {"trimming=false"});
    const double t_ndp = metric(ndp, "incast_ndp/ndp", "final_byte_ns");
    const double t_tmo = metric(tmo, "incast_ndp/timeout", "final_byte_ns");
    v.require(std::abs(t_ndp - 4200.0) <= 0.15 * 4200.0, "ndp final byte " + num(t_ndp) + "ns not within 15% of 4.2us");
    v.require(metric(ndp, "incast_ndp/ndp", "trimmed") == 6.0, "trims != 6");
    v.require(metric(ndp, "incast_ndp/ndp", "delivered") == 80.0, "ndp did not deliver 80 messages");
    v.require(metric(tmo, "incast_ndp/timeout", "delivered") == 80.0, "timeout run did not deliver 80 messages");
    v.require(t_tmo / t_ndp >= 3.0, "timeout/ndp final byte ratio " + num(t_tmo / t_ndp, 2) + " < 3");
    for (const auto* res : {&ndp, &tmo}) {
        std::uint32_t peak = 0;
        for (const auto& e : res->qtrace) peak = std::max(peak, e.occupancy_pkts);
        v.require(peak <= 74, "queue trace reaches " + std::to_string(peak) + " packets");
    }
    v.note("ndp " + num(t_ndp, 2) + "ns, timeout " + num(t_tmo, 2) + "ns, ratio " + num(t_tmo / t_ndp, 2));
    return v;
}

Verdict chain() {
    Verdict v;
    const Json cfg = preset("chain_replication");
    auto r = cli::run_config(cfg);
    auto loads = loads_of(r, "chain_replication/write");
    const double low = *std::min_element(loads.begin(), loads.end());
    const double mean = metric(r, "chain_replication/load=" + fmt_fixed(low, 3), "write_mean_ns");
    const double p99 = row(r, "chain_replication/write", low).p99_ns;
    v.require(std::abs(mean - 1100.0) <= 0.2 * 1100.0, "write mean " + num(mean) + "ns not within 20% of 1.1us");
    v.require(p99 <= 1800.0, "write p99 " + num(p99) + "ns > 1.8us");

    const ChainParams p = cli::chain_params(cfg);
    const std::uint64_t rate = p.common.fabric.rate_bps;
    const SimTime prop = p.common.fabric.propagation;
    // client -> switch -> tail and back, plus the tail's NIC and service
    const SimTime oracle = p.client_compute + (prop + ser(16 + p.key_bytes, rate)) * 2 +
                           p.common.pipeline.wire_to_wire() + p.read_service + (prop + ser(p.value_bytes, rate)) * 2;
    const SimTime read = chain_single(p, KvOp::Read);
    v.require(read == oracle, "read " + read.ns_string() + "ns != analytic " + oracle.ns_string() + "ns");
    v.require(chain_analytic_read(p) == oracle, "model analytic read disagrees");
    v.note("write mean " + num(mean, 1) + "ns p99 " + num(p99, 1) + "ns at load " + num(low, 2) + "; read " +
           read.ns_string() + "ns");
    return v;
}

Verdict transport_properties() {
    Verdict v;
    RngStream rng(2024, 0);
    int failures = 0, ndp_runs = 0, tmo_runs = 0;
    std::uint64_t trims = 0, drops = 0, pulls = 0;
    for (int i = 0; i < 1000; ++i) {
        testing::LossPattern pat;
        pat.mode = i % 2 == 0 ? TransportMode::Ndp : TransportMode::Timeout;
        pat.max_len = 4 * 1024;  // 1-4 packets
        pat.messages = 1 + static_cast<std::uint32_t>(rng.uniform_int(12));
        if (pat.mode == TransportMode::Ndp) {
            pat.data_loss = rng.uniform() * 0.6;
            pat.window = static_cast<std::uint32_t>(rng.uniform_int(5));  // 0 = default window
            ++ndp_runs;
        } else {
            pat.data_loss = rng.uniform() * 0.25;
            pat.ack_loss = rng.uniform() * 0.1;
            ++tmo_runs;
        }
        auto res = testing::run_lossy_pair(pat, rng.next_u64());
        trims += res.trims;
        drops += res.drops;
        pulls += res.pulls;
        if (!testing::pair_ok(res)) {
            if (failures < 3) {
                v.require(false, "pattern " + std::to_string(i) + ": missing " + std::to_string(res.missing) +
                                     " dup " + std::to_string(res.duplicates_delivered) + " corrupt " +
                                     std::to_string(res.corrupted) + " pools " + (res.pools_free ? "ok" : "leak"));
            }
            ++failures;
        }
    }
    v.require(failures == 0, std::to_string(failures) + " of 1000 patterns failed");
    v.require(trims > 0 && drops > 0 && pulls > 0, "patterns exercised no loss");
    v.note(std::to_string(ndp_runs) + " trim and " + std::to_string(tmo_runs) + " drop patterns, " +
           std::to_string(trims) + " trims, " + std::to_string(drops) + " drops, " + std::to_string(pulls) + " pulls");
    return v;
}

// Outcomes that must not depend on the seed.
std::vector<std::string> invariants(const std::string& name, const ExperimentResult& r) {
    std::vector<std::string> out;
    if (name == "incast_ndp") {
        out.push_back("trimmed=" + num(metric(r, "incast_ndp/ndp", "trimmed"), 0));
        out.push_back("delivered=" + num(metric(r, "incast_ndp/ndp", "delivered"), 0));
    }
    if (name == "loopback_latency") out.push_back("w2w=" + num(metric(r, name, "wire_to_wire_ns")));
    for (const auto& m : r.metrics) {
        if (m.metric == "sustained" && m.experiment.find("load=0.1") != std::string::npos) {
            out.push_back(m.experiment + "=" + num(m.value, 0));
        }
        if (m.metric == "ownership_violations" && m.experiment.find("/static/") != std::string::npos) {
            out.push_back(m.experiment + "=" + num(m.value, 0));
        }
    }
    for (const auto& s : r.summary) out.push_back(s.experiment + " rows");
    return out;
}

Verdict determinism() {
    Verdict v;
    int stochastic = 0;
    for (const auto& pr : cli::presets()) {
        const Json a_cfg = preset(pr.name);
        const auto a = cli::render_outputs(cli::run_config(a_cfg), a_cfg);
        const auto b = cli::render_outputs(cli::run_config(a_cfg), a_cfg);
        for (const auto& [file, text] : a) {
            if (file.size() > 4 && file.substr(file.size() - 4) == ".csv") {
                v.require(b.count(file) && b.at(file) == text, pr.name + "/" + file + " differs between runs");
            }
        }
        const Json c_cfg = preset(pr.name, {}, a_cfg["seed"].get<std::uint64_t>() + 1000);
        const auto c_res = cli::run_config(c_cfg);
        const auto c = cli::render_outputs(c_res, c_cfg);
        if (cli::takes_loads(pr.scenario)) {
            ++stochastic;
            v.require(c.at("samples.csv") != a.at("samples.csv"), pr.name + " samples ignore the seed");
        }
        const auto a_res = cli::run_config(a_cfg);
        v.require(invariants(pr.name, a_res) == invariants(pr.name, c_res), pr.name + " invariants change with seed");
    }
    v.note(std::to_string(cli::presets().size()) + " presets byte-identical; " + std::to_string(stochastic) +
           " seed-sensitive sample sets");
    return v;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Verdict()> fn;
    };
    const std::vector<Criterion> all{
        {1, "loopback latency", loopback_latency},
        {2, "core throughput", throughput},
        {3, "nic packet rate", packet_rate},
        {4, "hw vs timer scheduling", scheduling},
        {5, "bounded message processing time", bounded_mpt},
        {6, "core selection", core_selection},
        {7, "incast", incast},
        {8, "chain replication", chain},
        {9, "transport properties", transport_properties},
        {10, "determinism", determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        Verdict v;
        try {
            v = c.fn();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        if (!v.pass) ++failed;
        std::printf("criterion %d (%s): %s  %s\n", c.id, c.name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
