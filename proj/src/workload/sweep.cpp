#include <algorithm>
#include <cmath>

#include "nanosim/sim/rng.hpp"
#include "rig.hpp"

namespace nanosim {

void ExperimentResult::append(ExperimentResult other) {
    auto move_all = [](auto& dst, auto& src) {
        dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
    };
    move_all(summary, other.summary);
    move_all(samples, other.samples);
    move_all(qtrace, other.qtrace);
    move_all(metrics, other.metrics);
    move_all(nic_rows, other.nic_rows);
    move_all(thread_rows, other.thread_rows);
    move_all(log, other.log);
    incomplete = incomplete || other.incomplete;
}

std::vector<std::string> metrics_header() { return {"experiment", "metric", "value", "unit"}; }

std::vector<std::string> nic_header() {
    return {"experiment", "host", "core", "dispatched", "dropped_unbound", "rx_messages"};
}

std::vector<std::string> thread_header() {
    return {"experiment", "host",        "core",       "thread",  "port",
            "priority",   "processed",   "preemptions", "downgrades", "busy_ns"};
}

void collect_host_metrics(ExperimentResult& out, const std::string& experiment, const Host& host) {
    const auto& ns = host.nic().stats();
    for (std::size_t c = 0; c < host.num_cores(); ++c) {
        out.nic_rows.push_back({experiment, std::to_string(host.id()), std::to_string(c),
                                std::to_string(ns.dispatched.at(c)), std::to_string(ns.dropped_unbound),
                                std::to_string(ns.rx_messages)});
        const Core& core = host.core(c);
        for (std::size_t t = 0; t < core.num_threads(); ++t) {
            const auto& tcb = core.thread(t);
            out.thread_rows.push_back({experiment, std::to_string(host.id()), std::to_string(c), std::to_string(t),
                                       std::to_string(tcb.port), std::to_string(tcb.base_priority),
                                       std::to_string(tcb.stats.processed), std::to_string(tcb.stats.preemptions),
                                       std::to_string(tcb.stats.downgrades), tcb.stats.busy.ns_string()});
        }
    }
}

SimTime auto_run_limit(std::uint64_t num_requests, double rate_rps) {
    const double span_ns = 1.1 * static_cast<double>(num_requests) / rate_rps * 1e9;
    return SimTime::from_ns(span_ns) + SimTime::us(200);
}

std::uint64_t point_seed(std::uint64_t master, std::size_t index) { return derive_seed(master, index); }

PointResult run_open_loop(Engine& engine, Host& client, LoadGenConfig cfg, RequestFactory factory, SimTime limit) {
    LoadGenerator gen(engine, client, cfg, std::move(factory));
    gen.start();
    if (limit == SimTime{}) limit = cfg.start + auto_run_limit(cfg.num_requests, cfg.rate_rps);
    engine.run_until(limit);

    PointResult r;
    r.offered_rps = cfg.rate_rps;
    r.seed = cfg.seed;
    r.samples = gen.samples();
    r.incomplete = gen.incomplete();
    r.unanswered = gen.unanswered();
    r.end = engine.now();
    const auto& sends = gen.send_times();
    if (sends.size() >= 2) {
        const double span = (sends.back() - sends.front()).to_ns() * 1e-9;
        r.realized_rps = static_cast<double>(sends.size() - 1) / span;
    }
    if (!sends.empty() && gen.completed() > 0 && gen.last_completion() > sends.front()) {
        const double span = (gen.last_completion() - sends.front()).to_ns() * 1e-9;
        r.achieved_rps = static_cast<double>(gen.completed()) / span;
    }
    r.sustained = r.incomplete == 0 && r.achieved_rps >= 0.99 * r.realized_rps;
    return r;
}

namespace detail {

HostConfig endpoint_config(const CommonParams& c, HostId id) {
    HostConfig h;
    h.id = id;
    h.num_cores = 0;
    h.pipeline = PipelineConfig::zero();
    h.pipeline.line_rate_bps = c.fabric.rate_bps;
    h.transport = c.transport;
    h.sched = c.sched;
    return h;
}

HostConfig server_config(const CommonParams& c, HostId id, std::size_t cores, SelectorConfig sel) {
    HostConfig h;
    h.id = id;
    h.num_cores = cores;
    h.pipeline = c.pipeline;
    h.transport = c.transport;
    h.selector = std::move(sel);
    h.sched = c.sched;
    return h;
}

DirectRig::DirectRig(const CommonParams& c, HostConfig server_cfg)
    : client(engine, endpoint_config(c, 0)), server(engine, std::move(server_cfg)) {
    auto [up, down] = net.connect_direct(client, server, c.fabric.link());
    client.nic().attach_uplink(*up);
    server.nic().attach_uplink(*down);
}

std::vector<std::uint8_t> filler(std::uint32_t bytes) {
    std::vector<std::uint8_t> v(bytes);
    for (std::uint32_t i = 0; i < bytes; ++i) v[i] = static_cast<std::uint8_t>(i * 31 + 7);
    return v;
}

std::string load_tag(double load) { return "load=" + fmt_fixed(load, 3); }

void record_series(ExperimentResult& out, const std::string& series, const PointResult& pt,
                   const std::vector<LatencySample>& samples, std::uint64_t incomplete) {
    std::vector<double> lat;
    lat.reserve(samples.size());
    for (const auto& s : samples) lat.push_back(s.latency().to_ns());
    out.summary.push_back(summarize(series, pt.offered_rps, pt.load, lat, incomplete));
    out.samples.push_back(SampleBlock{series, pt.seed, pt.offered_rps, samples});
    out.metrics.push_back(MetricRow{series + "/" + load_tag(pt.load), "sustained", pt.sustained ? 1.0 : 0.0, "bool"});
    out.metrics.push_back(MetricRow{series + "/" + load_tag(pt.load), "achieved_rps", pt.achieved_rps, "rps"});
    if (incomplete > 0) {
        out.incomplete = true;
        out.log.push_back("warning: " + series + " at " + load_tag(pt.load) + " left " + std::to_string(incomplete) +
                          " requests unanswered");
    }
}

std::vector<LatencySample> select_samples(const std::vector<LatencySample>& all, int priority, int klass) {
    std::vector<LatencySample> out;
    for (const auto& s : all) {
        if (priority >= 0 && s.priority != static_cast<std::uint32_t>(priority)) continue;
        if (klass >= 0 && s.klass != static_cast<std::uint32_t>(klass)) continue;
        out.push_back(s);
    }
    return out;
}

std::uint64_t count_unanswered(const PointResult& pt, int priority, int klass) {
    std::uint64_t n = 0;
    for (const auto& [pr, kl] : pt.unanswered) {
        if (priority >= 0 && pr != static_cast<std::uint32_t>(priority)) continue;
        if (klass >= 0 && kl != static_cast<std::uint32_t>(klass)) continue;
        ++n;
    }
    return n;
}

}  // namespace detail
}  // namespace nanosim
