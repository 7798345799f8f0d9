#include "nanosim/cli/scenarios.hpp"

#include <cmath>
#include <sstream>

#include "nanosim/sim/engine.hpp"

namespace nanosim::cli {

namespace {

const Json& at(const Json& j, const std::string& path) {
    const Json* cur = &j;
    std::stringstream ss(path);
    for (std::string part; std::getline(ss, part, '.');) {
        if (!cur->is_object() || !cur->contains(part)) throw ConfigError(path + ": missing");
        cur = &(*cur)[part];
    }
    return *cur;
}

double num(const Json& j, const std::string& path) {
    const Json& v = at(j, path);
    if (!v.is_number()) throw ConfigError(path + ": expected number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path + ": must be finite");
    return d;
}

double nonneg(const Json& j, const std::string& path) {
    const double d = num(j, path);
    if (d < 0) throw ConfigError(path + ": must not be negative");
    return d;
}

double positive(const Json& j, const std::string& path) {
    const double d = num(j, path);
    if (!(d > 0)) throw ConfigError(path + ": must be positive");
    return d;
}

double fraction(const Json& j, const std::string& path) {
    const double d = num(j, path);
    if (d < 0 || d > 1) throw ConfigError(path + ": must be within [0, 1]");
    return d;
}

std::uint64_t count(const Json& j, const std::string& path, std::uint64_t min = 0) {
    const Json& v = at(j, path);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw ConfigError(path + ": expected a non-negative integer");
    }
    const auto u = v.get<std::uint64_t>();
    if (u < min) throw ConfigError(path + ": must be at least " + std::to_string(min));
    return u;
}

std::uint32_t count32(const Json& j, const std::string& path, std::uint64_t min = 0) {
    const auto u = count(j, path, min);
    if (u > 0xFFFFFFFFULL) throw ConfigError(path + ": too large");
    return static_cast<std::uint32_t>(u);
}

SimTime ns(const Json& j, const std::string& path) { return SimTime::from_ns(nonneg(j, path)); }

bool flag(const Json& j, const std::string& path) {
    const Json& v = at(j, path);
    if (!v.is_boolean()) throw ConfigError(path + ": expected boolean");
    return v.get<bool>();
}

template <class E>
E choice(const Json& j, const std::string& path, std::initializer_list<std::pair<const char*, E>> opts) {
    const Json& v = at(j, path);
    std::string names;
    for (const auto& [name, e] : opts) {
        if (v.is_string() && v.get<std::string>() == name) return e;
        names += names.empty() ? name : std::string("|") + name;
    }
    throw ConfigError(path + ": expected one of " + names + ", got " + v.dump());
}

template <class E>
std::vector<E> choices(const Json& j, const std::string& path, std::initializer_list<std::pair<const char*, E>> opts) {
    const Json& arr = at(j, path);
    if (!arr.is_array() || arr.empty()) throw ConfigError(path + ": expected a non-empty array");
    std::vector<E> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        Json wrap{{"v", arr[i]}};
        try {
            out.push_back(choice<E>(wrap, "v", opts));
        } catch (const ConfigError& e) {
            std::string msg = e.what();
            throw ConfigError(path + "[" + std::to_string(i) + "]" + msg.substr(1));
        }
    }
    return out;
}

CommonParams common(const Json& j) {
    CommonParams c;
    c.seed = count(j, "seed");
    c.fabric.rate_bps = static_cast<std::uint64_t>(std::llround(positive(j, "fabric.rate_gbps") * 1e9));
    c.fabric.propagation = ns(j, "fabric.propagation_ns");
    c.pipeline.ingress = ns(j, "pipeline.ingress_ns");
    c.pipeline.egress = ns(j, "pipeline.egress_ns");
    c.pipeline.mac_rx = ns(j, "pipeline.mac_rx_ns");
    c.pipeline.mac_tx = ns(j, "pipeline.mac_tx_ns");
    c.pipeline.line_rate_bps = c.fabric.rate_bps;

    auto& t = c.transport;
    t.mode = choice<TransportMode>(j, "transport.mode", {{"ndp", TransportMode::Ndp}, {"timeout", TransportMode::Timeout}});
    t.mtu_payload = count32(j, "transport.mtu_payload", 1);
    t.initial_window_pkts = count32(j, "transport.initial_window_pkts");
    t.line_rate_bps = c.fabric.rate_bps;
    t.rtt_estimate = ns(j, "transport.rtt_estimate_ns");
    t.pull_interval = ns(j, "transport.pull_interval_ns");
    t.rto = SimTime::from_ns(positive(j, "transport.rto_ns"));
    t.max_retransmissions = count32(j, "transport.max_retransmissions");

    auto& s = c.sched;
    s.mode = choice<SchedMode>(j, "scheduler.mode", {{"hw", SchedMode::HwInterrupt}, {"timer", SchedMode::Timer}});
    s.timer_period = SimTime::from_ns(positive(j, "scheduler.timer_period_ns"));
    s.ctx_switch = SimTime::cycles(count(j, "scheduler.ctx_switch_cycles"));
    s.mpt_enabled = flag(j, "scheduler.mpt_enabled");
    s.mpt_bound = SimTime::from_ns(positive(j, "scheduler.mpt_bound_ns"));
    s.restore = choice<RestorePolicy>(j, "scheduler.restore",
                                      {{"next_message", RestorePolicy::NextMessage}, {"never", RestorePolicy::Never}});
    s.idle_rotation = flag(j, "scheduler.idle_rotation");
    s.idle_timeout = SimTime::from_ns(positive(j, "scheduler.idle_timeout_ns"));
    s.max_threads = count(j, "scheduler.max_threads", 1);

    c.num_requests = count(j, "workload.num_requests", 1);
    c.warmup_discard = count(j, "workload.warmup_discard");
    if (c.warmup_discard >= c.num_requests) throw ConfigError("workload.warmup_discard: must be below num_requests");
    c.run_limit = ns(j, "workload.run_limit_ns");
    const Json& loads = at(j, "workload.loads");
    if (!loads.is_array()) throw ConfigError("workload.loads: expected array");
    for (std::size_t i = 0; i < loads.size(); ++i) {
        if (!loads[i].is_number() || !(loads[i].get<double>() > 0)) {
            throw ConfigError("workload.loads[" + std::to_string(i) + "]: must be a positive number");
        }
        c.loads.push_back(loads[i].get<double>());
    }
    return c;
}

void require_loads(const CommonParams& c) {
    if (c.loads.empty()) throw ConfigError("workload.loads: empty load grid");
}

LoopbackParams loopback(const Json& j) {
    LoopbackParams p;
    p.common = common(j);
    p.message_bytes = count32(j, "loopback.message_bytes");
    p.app_service = ns(j, "loopback.app_service_ns");
    return p;
}

ThroughputParams throughput(const Json& j) {
    ThroughputParams p;
    p.common = common(j);
    p.message_bytes = count32(j, "throughput.message_bytes", 1);
    p.fixed_cycles_per_word = count32(j, "throughput.fixed_cycles_per_word");
    p.variable_cycles_per_word = count32(j, "throughput.variable_cycles_per_word");
    p.cycles_per_msg = count32(j, "throughput.cycles_per_msg");
    p.warmup = ns(j, "throughput.warmup_ns");
    p.window = SimTime::from_ns(positive(j, "throughput.window_ns"));
    p.rate_frame_bytes = count32(j, "throughput.rate_frame_bytes", 64);
    return p;
}

SchedParams sched(const Json& j) {
    SchedParams p;
    p.common = common(j);
    require_loads(p.common);
    p.service = SimTime::from_ns(positive(j, "sched.service_ns"));
    p.high_priority_fraction = fraction(j, "sched.high_priority_fraction");
    p.policies = choices<SchedMode>(j, "sched.policies", {{"hw", SchedMode::HwInterrupt}, {"timer", SchedMode::Timer}});
    return p;
}

BoundedParams bounded(const Json& j) {
    BoundedParams p;
    p.common = common(j);
    require_loads(p.common);
    p.service = SimTime::from_ns(positive(j, "bounded.service_ns"));
    p.long_service = SimTime::from_ns(positive(j, "bounded.long_service_ns"));
    p.misbehave_period = count32(j, "bounded.misbehave_period");
    p.misbehave_phase = count32(j, "bounded.misbehave_phase");
    p.well_behaved_fraction = fraction(j, "bounded.well_behaved_fraction");
    p.variants = choices<bool>(j, "bounded.variants", {{"bounded", true}, {"unbounded", false}});
    return p;
}

SelectionParams selection(const Json& j) {
    SelectionParams p;
    p.common = common(j);
    require_loads(p.common);
    p.num_cores = count(j, "selection.num_cores", 1);
    p.short_service = SimTime::from_ns(positive(j, "selection.short_service_ns"));
    p.long_service = SimTime::from_ns(positive(j, "selection.long_service_ns"));
    p.p_long = fraction(j, "selection.p_long");
    p.jbsq_n = count32(j, "selection.jbsq_n", 1);
    p.policies = choices<SelectionPolicy>(j, "selection.policies",
                                          {{"rss", SelectionPolicy::Rss},
                                           {"jbsq", SelectionPolicy::Jbsq},
                                           {"jbsq_pre", SelectionPolicy::JbsqPre}});
    return p;
}

IncastParams incast(const Json& j) {
    IncastParams p;
    p.common = common(j);
    p.trimming = flag(j, "trimming");
    p.clients = count32(j, "incast.clients", 1);
    if (p.clients > 0xFFFE) throw ConfigError("incast.clients: too many hosts");
    p.message_bytes = count32(j, "incast.message_bytes", 1);
    p.queue_capacity_pkts = count32(j, "incast.queue_capacity_pkts");
    p.queue_capacity_bytes = count(j, "incast.queue_capacity_bytes");
    p.limit = SimTime::from_ns(positive(j, "incast.limit_ns"));
    return p;
}

KvParams kv(const Json& j) {
    KvParams p;
    p.common = common(j);
    require_loads(p.common);
    p.kv.num_cores = count32(j, "kv.num_cores", 1);
    p.kv.keys_per_core = count32(j, "kv.keys_per_core", 1);
    p.kv.key_bytes = count32(j, "kv.key_bytes", 8);
    p.kv.value_bytes = count32(j, "kv.value_bytes");
    p.kv.read_service = SimTime::from_ns(positive(j, "kv.read_service_ns"));
    p.kv.write_service = SimTime::from_ns(positive(j, "kv.write_service_ns"));
    p.write_fraction = fraction(j, "kv.write_fraction");
    p.policies = choices<KvPolicy>(j, "kv.policies", {{"jbsq", KvPolicy::Jbsq}, {"static", KvPolicy::Static}});
    return p;
}

ChainParams chain(const Json& j) {
    ChainParams p;
    p.common = common(j);
    require_loads(p.common);
    p.replicas = count32(j, "chain.replicas", 1);
    if (p.replicas > 3) throw ConfigError("chain.replicas: at most 3");
    p.client_compute = ns(j, "chain.client_compute_ns");
    p.write_service = SimTime::from_ns(positive(j, "chain.write_service_ns"));
    p.read_service = SimTime::from_ns(positive(j, "chain.read_service_ns"));
    p.keys = count32(j, "chain.keys", 1);
    p.key_bytes = count32(j, "chain.key_bytes", 8);
    p.value_bytes = count32(j, "chain.value_bytes");
    p.read_fraction = fraction(j, "chain.read_fraction");
    return p;
}

std::string experiment_of(const Json& cfg) {
    const Json& e = at(cfg, "experiment");
    if (!e.is_string()) throw ConfigError("experiment: expected string");
    return e.get<std::string>();
}

}  // namespace

CommonParams common_params(const Json& cfg) { return common(cfg); }
BoundedParams bounded_params(const Json& cfg) { return bounded(cfg); }
ChainParams chain_params(const Json& cfg) { return chain(cfg); }

bool takes_loads(const std::string& scenario) {
    return scenario == "sched_hw_vs_timer" || scenario == "bounded_mpt" || scenario == "core_selection" ||
           scenario == "mica_kv" || scenario == "chain_replication";
}

void validate(const Json& cfg) {
    const std::string e = experiment_of(cfg);
    if (e == "loopback_latency") loopback(cfg);
    else if (e == "core_throughput") throughput(cfg);
    else if (e == "sched_hw_vs_timer") sched(cfg);
    else if (e == "bounded_mpt") bounded(cfg);
    else if (e == "core_selection") selection(cfg);
    else if (e == "incast_ndp") incast(cfg);
    else if (e == "mica_kv") kv(cfg);
    else if (e == "chain_replication") chain(cfg);
    else throw ConfigError("experiment: unknown scenario '" + e + "'");
}

ExperimentResult run_config(const Json& cfg) {
    const std::string e = experiment_of(cfg);
    if (e == "loopback_latency") return loopback_experiment(loopback(cfg), e);
    if (e == "core_throughput") return throughput_experiment(throughput(cfg), e);
    if (e == "sched_hw_vs_timer") return sched_experiment(sched(cfg), e);
    if (e == "bounded_mpt") return bounded_experiment(bounded(cfg), e);
    if (e == "core_selection") return selection_experiment(selection(cfg), e);
    if (e == "incast_ndp") return incast_experiment(incast(cfg), e);
    if (e == "mica_kv") return kv_experiment(kv(cfg), e);
    if (e == "chain_replication") return chain_experiment(chain(cfg), e);
    throw ConfigError("experiment: unknown scenario '" + e + "'");
}

std::vector<double> parse_load_grid(const std::string& spec) {
    std::vector<double> out;
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty() || !std::isfinite(v)) {
            throw ConfigError("load grid: '" + s + "' is not a number");
        }
        return v;
    };
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw ConfigError("load grid: expected start:stop:step");
        const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
        if (!(step > 0)) throw ConfigError("load grid: step must be positive");
        const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
        if (b >= a) {
            for (std::size_t i = 0; i <= n; ++i) out.push_back(std::round((a + step * i) * 1e9) / 1e9);
        }
    } else {
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ',');) {
            if (!p.empty()) out.push_back(number(p));
        }
    }
    if (out.empty()) throw ConfigError("load grid: empty");
    for (double v : out) {
        if (!(v > 0)) throw ConfigError("load grid: loads must be positive");
    }
    return out;
}

}  // namespace nanosim::cli
