#include <algorithm>
#include <memory>
#include <set>

#include "rig.hpp"

namespace nanosim {

namespace {

bool pools_idle(const Host& h) {
    const auto& t = h.nic().transport();
    return t.tx_pool().all_free() && t.rx_pool().all_free() && t.outstanding_tx() == 0 && t.outstanding_rx() == 0;
}

}  // namespace

IncastResult run_incast(const IncastParams& p) {
    if (p.clients == 0) throw ConfigError("incast.clients must be at least 1");
    CommonParams c = p.common;
    if (!p.trimming) c.transport.mode = TransportMode::Timeout;

    Engine engine;
    Network net(engine);
    Switch& sw = net.add_switch("tor");

    // Host 0 receives; hosts 1..clients each send one message at t = 0.
    std::vector<std::unique_ptr<Host>> hosts;
    SwitchPortConfig bottleneck{p.queue_capacity_pkts, p.queue_capacity_bytes, p.trimming};
    std::vector<Network::Attachment> att;
    for (std::uint32_t i = 0; i <= p.clients; ++i) {
        hosts.push_back(std::make_unique<Host>(engine, detail::endpoint_config(c, static_cast<HostId>(i))));
        att.push_back(net.attach_host(static_cast<HostId>(i), *hosts.back(), sw, c.fabric.link(),
                                      i == 0 ? bottleneck : SwitchPortConfig::unlimited()));
        hosts.back()->nic().attach_uplink(*att.back().uplink);
    }
    net.validate();

    IncastResult r;
    SwitchPort& port = sw.port(att[0].port);
    port.enable_trace(true);

    att[0].downlink->set_tx_observer([&r](const Packet& pkt, SimTime, SimTime end) {
        if (pkt.kind == PacketKind::Data) r.final_byte = std::max(r.final_byte, end);
    });
    att[0].uplink->set_tx_observer([&r](const Packet& pkt, SimTime start, SimTime) {
        if (pkt.kind == PacketKind::Pull) r.pull_departures.push_back(start);
    });
    std::set<std::pair<MsgId, std::uint32_t>> seen;
    const SimTime prop = c.fabric.propagation;
    for (std::uint32_t i = 1; i <= p.clients; ++i) {
        att[i].uplink->set_tx_observer([&r, &seen, prop](const Packet& pkt, SimTime, SimTime end) {
            if (pkt.kind != PacketKind::Data) return;
            if (!seen.insert({pkt.msg, pkt.pkt_index}).second) r.retx_arrivals.push_back(end + prop);
        });
        hosts[i]->set_sink([](Message&&) {});
    }
    hosts[0]->set_sink([&r, &engine](Message&& msg) {
        ++r.delivered;
        r.completions.push_back(LatencySample{msg.meta.rpc_id, 0, 0, msg.meta.issued_at, engine.now()});
    });

    const auto payload = detail::filler(p.message_bytes);
    for (std::uint32_t i = 1; i <= p.clients; ++i) {
        RpcMeta meta{i, 0, 0, SimTime{}};
        if (hosts[i]->send(make_message(detail::kClientPort, 0, detail::kClientPort, payload, meta)) !=
            TxStatus::Accepted) {
            throw ConfigError("incast: client could not allocate a transmit buffer");
        }
    }
    engine.run_until(p.limit);

    r.trimmed = port.trimmed;
    r.dropped = port.dropped;
    r.enqueued = port.enqueued;
    r.peak_pkts = port.peak_pkts;
    r.peak_bytes = port.peak_bytes;
    r.trace = port.trace();
    r.buffers_conserved = true;
    for (const auto& h : hosts) {
        const auto& st = h->nic().transport().stats();
        r.retransmissions += st.retransmissions;
        r.failed += st.msgs_failed;
        r.buffers_conserved = r.buffers_conserved && pools_idle(*h);
    }
    return r;
}

ExperimentResult incast_experiment(const IncastParams& p, const std::string& name) {
    ExperimentResult out;
    IncastResult r = run_incast(p);
    const std::string series = name + (p.trimming ? "/ndp" : "/timeout");
    std::vector<double> lat;
    for (const auto& s : r.completions) lat.push_back(s.latency().to_ns());
    const std::uint64_t missing = p.clients - r.delivered;
    out.summary.push_back(summarize(series, 0.0, 0.0, lat, missing));
    out.samples.push_back(SampleBlock{series, p.common.seed, 0.0, r.completions});
    out.qtrace = r.trace;
    auto metric = [&](const std::string& m, double v, const std::string& unit) {
        out.metrics.push_back(MetricRow{series, m, v, unit});
    };
    metric("final_byte_ns", r.final_byte.to_ns(), "ns");
    metric("trimmed", static_cast<double>(r.trimmed), "packets");
    metric("dropped", static_cast<double>(r.dropped), "packets");
    metric("enqueued", static_cast<double>(r.enqueued), "packets");
    metric("peak_queue_pkts", r.peak_pkts, "packets");
    metric("peak_queue_bytes", static_cast<double>(r.peak_bytes), "bytes");
    metric("delivered", r.delivered, "messages");
    metric("retransmissions", static_cast<double>(r.retransmissions), "packets");
    metric("failed", static_cast<double>(r.failed), "messages");
    metric("buffers_conserved", r.buffers_conserved ? 1.0 : 0.0, "bool");
    if (missing > 0) {
        out.incomplete = true;
        out.log.push_back("warning: " + std::to_string(missing) + " incast messages not delivered by " +
                          r.final_byte.ns_string());
    }
    return out;
}

}  // namespace nanosim
