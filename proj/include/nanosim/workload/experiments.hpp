#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nanosim/apps/kv_store.hpp"
#include "nanosim/core/host.hpp"
#include "nanosim/net/switch.hpp"
#include "nanosim/workload/loadgen.hpp"
#include "nanosim/workload/metrics.hpp"

namespace nanosim {

struct FabricParams {
    std::uint64_t rate_bps = 200'000'000'000ULL;
    SimTime propagation = SimTime::ns(43);

    LinkConfig link() const { return LinkConfig{rate_bps, propagation}; }
};

/// Settings shared by every scenario.
struct CommonParams {
    std::uint64_t seed = 1;
    FabricParams fabric;
    PipelineConfig pipeline = PipelineConfig::without_mac();
    TransportConfig transport;
    SchedulerConfig sched;
    std::uint64_t num_requests = 20000;
    std::uint64_t warmup_discard = 0;
    /// Zero picks 1.1 x the nominal generation time plus 200us.
    SimTime run_limit{};
    /// Offered loads as fractions of ideal capacity.
    std::vector<double> loads;

    /// Defaults with `pipe` in place of the MAC-less pipeline.
    static CommonParams with_pipeline(PipelineConfig pipe) {
        CommonParams c;
        c.pipeline = pipe;
        return c;
    }
};

struct SampleBlock {
    std::string experiment;
    std::uint64_t seed = 0;
    double offered_rps = 0;
    std::vector<LatencySample> samples;
};

struct MetricRow {
    std::string experiment;
    std::string metric;
    double value = 0;
    std::string unit;
};

/// Everything one run writes to its output directory.
struct ExperimentResult {
    std::vector<SummaryRow> summary;
    std::vector<SampleBlock> samples;
    std::vector<QueueTraceEvent> qtrace;
    std::vector<MetricRow> metrics;
    std::vector<std::vector<std::string>> nic_rows;     // nic_header()
    std::vector<std::vector<std::string>> thread_rows;  // thread_header()
    std::vector<std::string> log;
    /// Some point left requests unanswered at its run limit.
    bool incomplete = false;

    void append(ExperimentResult other);
};

std::vector<std::string> metrics_header();
std::vector<std::string> nic_header();
std::vector<std::string> thread_header();

/// Adds per-core and per-thread counters of `host` to the result tables.
void collect_host_metrics(ExperimentResult& out, const std::string& experiment, const Host& host);

// ---------------------------------------------------------------------------
// Open-loop measurement of one load point.

struct PointResult {
    double load = 0;
    double offered_rps = 0;
    std::uint64_t seed = 0;
    std::vector<LatencySample> samples;
    std::uint64_t incomplete = 0;
    /// (priority, class) of each unanswered request.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> unanswered;
    double achieved_rps = 0;
    double realized_rps = 0;
    /// Every request answered and throughput kept up with the arrivals.
    bool sustained = false;
    SimTime end{};
};

/// Starts the generator and runs the engine to `limit` (auto when zero).
PointResult run_open_loop(Engine& engine, Host& client, LoadGenConfig cfg, RequestFactory factory, SimTime limit);

SimTime auto_run_limit(std::uint64_t num_requests, double rate_rps);

/// Seed used for sweep point `index`.
std::uint64_t point_seed(std::uint64_t master, std::size_t index);

// ---------------------------------------------------------------------------
// Loopback and wire-to-wire latency.

struct LoopbackParams {
    CommonParams common = CommonParams::with_pipeline(PipelineConfig{});
    std::uint32_t message_bytes = 8;
    SimTime app_service{};
};

struct LoopbackResult {
    SimTime internal_loopback;  // MAC stages removed
    SimTime wire_to_wire;       // frame in from the wire to reply frame out
    SimTime round_trip;         // at the client, including both links
    std::uint32_t request_frame = 0;
    bool reply_correct = false;
};

LoopbackResult run_loopback(const LoopbackParams& p);
ExperimentResult loopback_experiment(const LoopbackParams& p, const std::string& name);

// ---------------------------------------------------------------------------
// Single-core throughput and NIC packet rate.

struct ThroughputParams {
    CommonParams common;
    std::uint32_t message_bytes = 1024;
    std::uint32_t fixed_cycles_per_word = 1;
    std::uint32_t variable_cycles_per_word = 3;
    std::uint32_t cycles_per_msg = 6;
    SimTime warmup = SimTime::us(2);
    SimTime window = SimTime::us(10);
    std::uint32_t rate_frame_bytes = 72;
};

struct ThroughputResult {
    double fixed_rx_gbps = 0;
    double fixed_tx_gbps = 0;
    double variable_rx_gbps = 0;
    double variable_tx_gbps = 0;
    double packet_rate_computed = 0;
    double packet_rate_measured = 0;
};

/// RX: messages backlogged in the global RX queue, payload bits per second
/// the core retires. TX: frame bits per second leaving on the uplink.
double measure_rx_gbps(const ThroughputParams& p, std::uint32_t cycles_per_word);
double measure_tx_gbps(const ThroughputParams& p, std::uint32_t cycles_per_word);
/// Back-to-back frames into the NIC; messages delivered per second over the window.
double measure_packet_rate(const ThroughputParams& p);

ThroughputResult run_throughput(const ThroughputParams& p);
ExperimentResult throughput_experiment(const ThroughputParams& p, const std::string& name);

// ---------------------------------------------------------------------------
// Hardware vs timer thread scheduling.

struct SchedParams {
    CommonParams common;
    SimTime service = SimTime::ns(500);
    double high_priority_fraction = 0.2;
    std::vector<SchedMode> policies{SchedMode::HwInterrupt, SchedMode::Timer};
};

struct SchedPoint {
    SchedMode mode = SchedMode::HwInterrupt;
    PointResult point;
    double p99_prio0 = 0;
    double p99_prio1 = 0;
};

double sched_capacity(const SchedParams& p);
SchedPoint run_sched_point(const SchedParams& p, SchedMode mode, double load, std::uint64_t seed,
                           ExperimentResult* out = nullptr, const std::string& name = {});
ExperimentResult sched_experiment(const SchedParams& p, const std::string& name);

// ---------------------------------------------------------------------------
// Bounded message processing time.

struct BoundedParams {
    /// A downgraded thread stays at priority 1.
    CommonParams common = [] {
        CommonParams c;
        c.sched.restore = RestorePolicy::Never;
        return c;
    }();
    SimTime service = SimTime::ns(500);
    SimTime long_service = SimTime::us(5);
    std::uint32_t misbehave_period = 100;
    /// Position of the long request within each period; 1 misbehaves first.
    std::uint32_t misbehave_phase = 1;
    double well_behaved_fraction = 0.42;
    std::vector<bool> variants{true, false};  // bounding on / off
};

struct BoundedPoint {
    bool bounded = true;
    PointResult point;
    double p99_well_behaved = 0;
    double p99_misbehaving = 0;
};

double bounded_capacity(const BoundedParams& p);
BoundedPoint run_bounded_point(const BoundedParams& p, bool bounded, double load, std::uint64_t seed,
                               ExperimentResult* out = nullptr, const std::string& name = {});
ExperimentResult bounded_experiment(const BoundedParams& p, const std::string& name);

/// Closed-loop check of the per-message latency bound for k priority-0
/// threads with at most one outstanding message each.
struct BoundCheckParams {
    CommonParams common;
    std::uint64_t seed = 1;
    std::uint32_t requests_per_thread = 400;
};

struct BoundCheckResult {
    std::uint32_t k = 0;
    SimTime nic_latency;  // N: both links, serialization and the loopback pipeline
    SimTime bound;
    SimTime max_latency;
    std::uint64_t samples = 0;
    std::uint64_t violations = 0;
    std::uint64_t downgrades = 0;
};

BoundCheckResult run_bound_check(const BoundCheckParams& p);

// ---------------------------------------------------------------------------
// Core selection: RSS, JBSQ and JBSQ with priorities.

enum class SelectionPolicy { Rss, Jbsq, JbsqPre };
const char* to_string(SelectionPolicy p);

struct SelectionParams {
    CommonParams common;
    std::size_t num_cores = 4;
    SimTime short_service = SimTime::ns(500);
    SimTime long_service = SimTime::us(5);
    double p_long = 0.005;
    std::uint32_t jbsq_n = 2;
    std::vector<SelectionPolicy> policies{SelectionPolicy::Rss, SelectionPolicy::Jbsq, SelectionPolicy::JbsqPre};
};

struct SelectionPoint {
    SelectionPolicy policy = SelectionPolicy::Jbsq;
    PointResult point;
    double p99 = 0;
};

double selection_capacity(const SelectionParams& p);
SelectionPoint run_selection_point(const SelectionParams& p, SelectionPolicy policy, double load,
                                   std::uint64_t seed, ExperimentResult* out = nullptr,
                                   const std::string& name = {});
ExperimentResult selection_experiment(const SelectionParams& p, const std::string& name);

// ---------------------------------------------------------------------------
// N-to-1 incast through one switch.

struct IncastParams {
    CommonParams common;
    std::uint32_t clients = 80;
    std::uint32_t message_bytes = 1024;
    std::uint32_t queue_capacity_pkts = 74;
    std::uint64_t queue_capacity_bytes = 0;
    /// Trimming on runs NDP; off runs the timeout-only transport.
    bool trimming = true;
    SimTime limit = SimTime::us(500);
};

struct IncastResult {
    SimTime final_byte;  // last DATA bit onto the bottleneck link
    std::uint64_t trimmed = 0;
    std::uint64_t dropped = 0;
    std::uint64_t enqueued = 0;
    std::uint32_t peak_pkts = 0;
    std::uint64_t peak_bytes = 0;
    std::uint32_t delivered = 0;
    std::uint64_t retransmissions = 0;
    std::uint64_t failed = 0;
    std::vector<QueueTraceEvent> trace;
    std::vector<SimTime> pull_departures;
    std::vector<SimTime> retx_arrivals;  // retransmitted DATA reaching the switch
    std::vector<LatencySample> completions;
    bool buffers_conserved = false;
};

IncastResult run_incast(const IncastParams& p);
ExperimentResult incast_experiment(const IncastParams& p, const std::string& name);

// ---------------------------------------------------------------------------
// MICA-style key-value store.

struct KvParams {
    CommonParams common = CommonParams::with_pipeline(PipelineConfig{});
    KvConfig kv;
    double write_fraction = 0.5;
    std::vector<KvPolicy> policies{KvPolicy::Jbsq, KvPolicy::Static};
};

struct KvPoint {
    KvPolicy policy = KvPolicy::Jbsq;
    PointResult point;
    double p99_read = 0;
    double p99_write = 0;
    double p99 = 0;
    std::uint64_t violations = 0;
    std::vector<std::uint64_t> per_core;
};

double kv_capacity(const KvParams& p);
KvPoint run_kv_point(const KvParams& p, KvPolicy policy, double load, std::uint64_t seed,
                     ExperimentResult* out = nullptr, const std::string& name = {});
ExperimentResult kv_experiment(const KvParams& p, const std::string& name);

// ---------------------------------------------------------------------------
// Chain replication over a zero-latency switch.

struct ChainParams {
    CommonParams common = CommonParams::with_pipeline(PipelineConfig{});
    std::uint32_t replicas = 3;
    SimTime client_compute = SimTime::ns(130);
    SimTime write_service = SimTime::ps(128'520);
    SimTime read_service = SimTime::ps(128'520);
    std::uint32_t keys = 10000;
    std::uint32_t key_bytes = 16;
    std::uint32_t value_bytes = 64;
    double read_fraction = 0.1;
};

struct ChainPoint {
    PointResult point;
    double write_mean = 0;
    double write_p99 = 0;
    double read_mean = 0;
    double read_p99 = 0;
};

/// Closed-form latencies for an isolated request.
SimTime chain_analytic_write(const ChainParams& p);
SimTime chain_analytic_read(const ChainParams& p);
/// Latency of one request issued into an otherwise idle system.
SimTime chain_single(const ChainParams& p, KvOp op);

double chain_capacity(const ChainParams& p);
ChainPoint run_chain_point(const ChainParams& p, double load, std::uint64_t seed, ExperimentResult* out = nullptr,
                           const std::string& name = {});
ExperimentResult chain_experiment(const ChainParams& p, const std::string& name);

}  // namespace nanosim
