#include <algorithm>
#include <memory>

#include "nanosim/apps/basic_apps.hpp"
#include "rig.hpp"

namespace nanosim {

using detail::DirectRig;
using detail::kClientPort;

namespace {

constexpr std::uint64_t kAppStream = 100;

LoadGenConfig gen_config(const CommonParams& c, double rate, std::uint64_t seed) {
    LoadGenConfig g;
    g.rate_rps = rate;
    g.num_requests = c.num_requests;
    g.warmup_discard = c.warmup_discard;
    g.client_port = kClientPort;
    g.seed = seed;
    return g;
}

void check_loads(const CommonParams& c) {
    for (double l : c.loads) {
        if (!(l > 0.0)) throw ConfigError("workload.loads: every load must be positive");
    }
}

}  // namespace

// ---------------------------------------------------------------------------

double sched_capacity(const SchedParams& p) { return 1e12 / static_cast<double>(p.service.picos()); }

SchedPoint run_sched_point(const SchedParams& p, SchedMode mode, double load, std::uint64_t seed,
                           ExperimentResult* out, const std::string& name) {
    CommonParams c = p.common;
    c.sched.mode = mode;
    DirectRig rig(c, detail::server_config(c, 1, 1, SelectorConfig{}));
    FixedServiceApp high(p.service), low(p.service);
    rig.server.bind(0, 0, 0, high);
    rig.server.bind(0, 1, 1, low);

    const double hf = p.high_priority_fraction;
    auto factory = [hf](std::uint64_t, RngStream& rng) {
        const std::uint32_t prio = rng.uniform() < hf ? 0 : 1;
        return RequestSpec{1, static_cast<Port>(prio), std::vector<std::uint8_t>(8, 0), prio, prio};
    };
    SchedPoint sp;
    sp.mode = mode;
    sp.point = run_open_loop(rig.engine, rig.client, gen_config(c, load * sched_capacity(p), seed), factory,
                             c.run_limit);
    sp.point.load = load;
    auto hi = latencies_ns(sp.point.samples, 0);
    auto lo = latencies_ns(sp.point.samples, 1);
    if (!hi.empty()) sp.p99_prio0 = percentile(hi, 99);
    if (!lo.empty()) sp.p99_prio1 = percentile(lo, 99);
    if (out) {
        const std::string base = name + "/" + to_string(mode);
        for (int prio : {0, 1}) {
            detail::record_series(*out, base + "/prio" + std::to_string(prio), sp.point,
                                  detail::select_samples(sp.point.samples, prio, -1),
                                  detail::count_unanswered(sp.point, prio, -1));
        }
        collect_host_metrics(*out, base + "/" + detail::load_tag(load), rig.server);
    }
    return sp;
}

ExperimentResult sched_experiment(const SchedParams& p, const std::string& name) {
    check_loads(p.common);
    ExperimentResult out;
    for (std::size_t i = 0; i < p.common.loads.size(); ++i) {
        const std::uint64_t seed = point_seed(p.common.seed, i);
        for (auto mode : p.policies) run_sched_point(p, mode, p.common.loads[i], seed, &out, name);
    }
    return out;
}

// ---------------------------------------------------------------------------

double bounded_capacity(const BoundedParams& p) {
    const double s = static_cast<double>(p.service.picos());
    const double l = static_cast<double>(p.long_service.picos());
    const double per = p.misbehave_period == 0 ? 0.0 : 1.0 / p.misbehave_period;
    const double mis = s * (1.0 - per) + l * per;
    const double mean = p.well_behaved_fraction * s + (1.0 - p.well_behaved_fraction) * mis;
    return 1e12 / mean;
}

BoundedPoint run_bounded_point(const BoundedParams& p, bool bounded, double load, std::uint64_t seed,
                               ExperimentResult* out, const std::string& name) {
    CommonParams c = p.common;
    c.sched.mpt_enabled = bounded;
    DirectRig rig(c, detail::server_config(c, 1, 1, SelectorConfig{}));
    FixedServiceApp good(p.service);
    MisbehavingApp bad({p.service, p.long_service, p.misbehave_period, 0.0, 8, p.misbehave_phase},
                       RngStream(seed, kAppStream));
    rig.server.bind(0, 0, 0, good);
    rig.server.bind(0, 1, 0, bad);

    const double wf = p.well_behaved_fraction;
    auto factory = [wf](std::uint64_t, RngStream& rng) {
        const std::uint32_t klass = rng.uniform() < wf ? 0 : 1;
        return RequestSpec{1, static_cast<Port>(klass), std::vector<std::uint8_t>(8, 0), klass, 0};
    };
    BoundedPoint bp;
    bp.bounded = bounded;
    bp.point = run_open_loop(rig.engine, rig.client, gen_config(c, load * bounded_capacity(p), seed), factory,
                             c.run_limit);
    bp.point.load = load;
    auto wb = latencies_ns(bp.point.samples, -1, 0);
    auto mb = latencies_ns(bp.point.samples, -1, 1);
    if (!wb.empty()) bp.p99_well_behaved = percentile(wb, 99);
    if (!mb.empty()) bp.p99_misbehaving = percentile(mb, 99);
    if (out) {
        const std::string base = name + (bounded ? "/bounded" : "/unbounded");
        detail::record_series(*out, base + "/well_behaved", bp.point, detail::select_samples(bp.point.samples, -1, 0),
                              detail::count_unanswered(bp.point, -1, 0));
        detail::record_series(*out, base + "/misbehaving", bp.point, detail::select_samples(bp.point.samples, -1, 1),
                              detail::count_unanswered(bp.point, -1, 1));
        collect_host_metrics(*out, base + "/" + detail::load_tag(load), rig.server);
    }
    return bp;
}

ExperimentResult bounded_experiment(const BoundedParams& p, const std::string& name) {
    check_loads(p.common);
    ExperimentResult out;
    for (std::size_t i = 0; i < p.common.loads.size(); ++i) {
        const std::uint64_t seed = point_seed(p.common.seed, i);
        for (bool v : p.variants) run_bounded_point(p, v, p.common.loads[i], seed, &out, name);
    }
    return out;
}

// ---------------------------------------------------------------------------

BoundCheckResult run_bound_check(const BoundCheckParams& p) {
    RngStream cfg_rng(p.seed, 7);
    BoundCheckResult r;
    r.k = 2 + static_cast<std::uint32_t>(cfg_rng.uniform_int(3));

    CommonParams c = p.common;
    c.sched.mpt_enabled = true;
    DirectRig rig(c, detail::server_config(c, 1, 1, SelectorConfig{}));

    const SimTime x = c.sched.mpt_bound;
    // Thread 0 conforms (service within x); the rest misbehave at random.
    std::vector<std::unique_ptr<App>> apps;
    std::vector<SimTime> think_mean;
    for (std::uint32_t t = 0; t < r.k; ++t) {
        const SimTime normal = SimTime::ns(100 + cfg_rng.uniform_int(401));
        if (t == 0) {
            apps.push_back(std::make_unique<FixedServiceApp>(normal));
        } else {
            MisbehavingApp::Config mc;
            mc.normal_service = normal;
            mc.long_service = x + SimTime::ns(100 + cfg_rng.uniform_int(7000));
            mc.period = 0;
            mc.p_long = 0.02 + 0.48 * cfg_rng.uniform();
            apps.push_back(std::make_unique<MisbehavingApp>(mc, RngStream(p.seed, kAppStream + t)));
        }
        think_mean.push_back(SimTime::ns(50 + cfg_rng.uniform_int(3000)));
        rig.server.bind(0, static_cast<Port>(t), 0, *apps.back());
    }

    const std::uint32_t req_frame = frame_bytes(8);
    const SimTime ser = serialization_time(req_frame, c.fabric.rate_bps);
    r.nic_latency = c.fabric.propagation + c.fabric.propagation + ser + ser + c.pipeline.wire_to_wire();
    r.bound = r.nic_latency + x * r.k + c.sched.ctx_switch * (r.k - 1);

    // Closed loop: each thread has its own client that waits for the reply,
    // thinks for an exponential time, then sends the next request.
    struct Client {
        std::uint32_t sent = 0;
        SimTime sent_at;
        RngStream think;
    };
    std::vector<Client> clients;
    for (std::uint32_t t = 0; t < r.k; ++t) clients.push_back(Client{0, SimTime{}, RngStream(p.seed, 200 + t)});

    std::uint64_t next_id = 0;
    std::function<void(std::uint32_t)> send = [&](std::uint32_t t) {
        auto& cl = clients[t];
        ++cl.sent;
        cl.sent_at = rig.engine.now();
        RpcMeta meta{next_id++, t, 0, cl.sent_at};
        rig.client.send(make_message(static_cast<Port>(kClientPort + t), 1, static_cast<Port>(t),
                                     std::vector<std::uint8_t>(8, 0), meta));
    };
    rig.client.set_sink([&](Message&& msg) {
        const std::uint32_t t = msg.meta.klass;
        auto& cl = clients[t];
        const SimTime lat = rig.engine.now() - cl.sent_at;
        if (t == 0) {
            ++r.samples;
            r.max_latency = std::max(r.max_latency, lat);
            if (lat > r.bound) ++r.violations;
        }
        if (cl.sent < p.requests_per_thread) {
            const double mean_ns = think_mean[t].to_ns();
            rig.engine.schedule_in(cl.think.exp_sample(1e9 / mean_ns), [&send, t] { send(t); });
        }
    });
    for (std::uint32_t t = 0; t < r.k; ++t) {
        rig.engine.schedule(clients[t].think.exp_sample(1e9 / think_mean[t].to_ns()), [&send, t] { send(t); });
    }
    rig.engine.run();
    for (std::size_t t = 0; t < rig.server.core(0).num_threads(); ++t) {
        r.downgrades += rig.server.core(0).thread(t).stats.downgrades;
    }
    return r;
}

// ---------------------------------------------------------------------------

const char* to_string(SelectionPolicy p) {
    switch (p) {
        case SelectionPolicy::Rss: return "rss";
        case SelectionPolicy::Jbsq: return "jbsq";
        case SelectionPolicy::JbsqPre: return "jbsq_pre";
    }
    return "?";
}

double selection_capacity(const SelectionParams& p) {
    const double mean = (1.0 - p.p_long) * static_cast<double>(p.short_service.picos()) +
                        p.p_long * static_cast<double>(p.long_service.picos());
    return static_cast<double>(p.num_cores) * 1e12 / mean;
}

SelectionPoint run_selection_point(const SelectionParams& p, SelectionPolicy policy, double load, std::uint64_t seed,
                                   ExperimentResult* out, const std::string& name) {
    SelectorConfig sel;
    sel.kind = policy == SelectionPolicy::Rss ? SelectorKind::Rss : SelectorKind::Jbsq;
    sel.n = p.jbsq_n;
    DirectRig rig(p.common, detail::server_config(p.common, 1, p.num_cores, sel));

    BimodalApp::Config bc{p.short_service, p.long_service, p.p_long, BimodalApp::Mode::ByClass, 8};
    std::vector<std::unique_ptr<BimodalApp>> apps;
    auto app = [&] {
        apps.push_back(std::make_unique<BimodalApp>(bc, RngStream(seed, kAppStream + apps.size())));
        return std::ref(*apps.back());
    };
    for (std::size_t core = 0; core < p.num_cores; ++core) {
        switch (policy) {
            case SelectionPolicy::Rss: rig.server.bind(core, static_cast<Port>(core), 0, app()); break;
            case SelectionPolicy::Jbsq: rig.server.bind(core, 0, 0, app()); break;
            case SelectionPolicy::JbsqPre:
                rig.server.bind(core, 0, 0, app());
                rig.server.bind(core, 1, 1, app());
                break;
        }
    }

    const double pl = p.p_long;
    const std::uint64_t cores = p.num_cores;
    auto factory = [pl, cores, policy](std::uint64_t, RngStream& rng) {
        // Both draws happen for every policy so all of them see the same requests.
        const std::uint32_t klass = rng.bernoulli(pl) ? 1 : 0;
        const auto port_draw = static_cast<Port>(rng.uniform_int(cores));
        RequestSpec s{1, 0, std::vector<std::uint8_t>(8, 0), klass, 0};
        if (policy == SelectionPolicy::Rss) s.port = port_draw;
        if (policy == SelectionPolicy::JbsqPre) {
            s.port = static_cast<Port>(klass);
            s.priority = klass;
        }
        return s;
    };
    SelectionPoint sp;
    sp.policy = policy;
    sp.point = run_open_loop(rig.engine, rig.client, gen_config(p.common, load * selection_capacity(p), seed),
                             factory, p.common.run_limit);
    sp.point.load = load;
    auto all = latencies_ns(sp.point.samples);
    if (!all.empty()) sp.p99 = percentile(all, 99);
    if (out) {
        const std::string base = name + "/" + to_string(policy);
        detail::record_series(*out, base, sp.point, sp.point.samples, sp.point.incomplete);
        collect_host_metrics(*out, base + "/" + detail::load_tag(load), rig.server);
    }
    return sp;
}

ExperimentResult selection_experiment(const SelectionParams& p, const std::string& name) {
    check_loads(p.common);
    ExperimentResult out;
    for (std::size_t i = 0; i < p.common.loads.size(); ++i) {
        const std::uint64_t seed = point_seed(p.common.seed, i);
        for (auto pol : p.policies) run_selection_point(p, pol, p.common.loads[i], seed, &out, name);
    }
    return out;
}

}  // namespace nanosim
