#include <cmath>

#include "nanosim/apps/basic_apps.hpp"
#include "rig.hpp"

namespace nanosim {

using detail::DirectRig;
using detail::kClientPort;

namespace {

constexpr Port kServerPort = 1;

struct LoopbackMeasure {
    SimTime w2w;
    SimTime rtt;
    bool reply_ok = false;
    std::uint32_t frame = 0;
};

LoopbackMeasure measure_loopback(const LoopbackParams& p, PipelineConfig pipe) {
    CommonParams c = p.common;
    c.pipeline = pipe;
    DirectRig rig(c, detail::server_config(c, 1, 1, SelectorConfig{}));
    LoopbackApp app(p.app_service, true);
    rig.server.bind(0, kServerPort, 0, app);

    std::optional<SimTime> in, out;
    LoopbackMeasure m;
    rig.server.nic().set_ingress_observer([&](const Packet& pkt, SimTime t) {
        if (pkt.kind == PacketKind::Data && !in) {
            in = t;
            m.frame = pkt.wire_bytes;
        }
    });
    rig.server.nic().set_egress_observer([&](const Packet& pkt, SimTime t) {
        if (pkt.kind == PacketKind::Data && !out) out = t;
    });

    std::vector<std::uint64_t> words(p.message_bytes / 8);
    for (std::size_t i = 0; i < words.size(); ++i) words[i] = i + 1;
    auto payload = words_to_bytes(words);
    payload.resize(p.message_bytes, 0);

    std::optional<Message> reply;
    SimTime reply_at;
    rig.client.set_sink([&](Message&& msg) {
        reply = std::move(msg);
        reply_at = rig.engine.now();
    });
    rig.client.send(make_message(kClientPort, 1, kServerPort, payload));
    rig.engine.run();

    if (!in || !out || !reply) throw SimError("loopback: request or reply never observed");
    m.w2w = *out - *in - p.app_service;
    m.rtt = reply_at;
    auto expect = payload;
    for (std::size_t w = 0; w < expect.size() / 8; ++w) write_word(expect, w, read_word(expect, w) + 1);
    m.reply_ok = reply->payload == expect && reply->header.peer_ip == 1 && reply->header.peer_port == kServerPort;
    return m;
}

}  // namespace

LoopbackResult run_loopback(const LoopbackParams& p) {
    LoopbackResult r;
    PipelineConfig no_mac = p.common.pipeline;
    no_mac.mac_rx = no_mac.mac_tx = SimTime{};
    const auto internal = measure_loopback(p, no_mac);
    const auto full = measure_loopback(p, p.common.pipeline);
    r.internal_loopback = internal.w2w;
    r.wire_to_wire = full.w2w;
    r.round_trip = full.rtt;
    r.request_frame = full.frame;
    r.reply_correct = internal.reply_ok && full.reply_ok;
    return r;
}

ExperimentResult loopback_experiment(const LoopbackParams& p, const std::string& name) {
    const auto r = run_loopback(p);
    ExperimentResult out;
    auto row = [&](const std::string& series, SimTime v) {
        out.summary.push_back(summarize(name + "/" + series, 0, 0, {v.to_ns()}, 0));
        out.metrics.push_back(MetricRow{name, series + "_ns", v.to_ns(), "ns"});
    };
    row("internal_loopback", r.internal_loopback);
    row("wire_to_wire", r.wire_to_wire);
    row("round_trip", r.round_trip);
    out.metrics.push_back(MetricRow{name, "request_frame_bytes", static_cast<double>(r.request_frame), "B"});
    out.metrics.push_back(MetricRow{name, "reply_correct", r.reply_correct ? 1.0 : 0.0, "bool"});
    out.log.push_back("internal loopback " + r.internal_loopback.ns_string() + "ns, wire-to-wire " +
                      r.wire_to_wire.ns_string() + "ns");
    return out;
}

// ---------------------------------------------------------------------------

double measure_rx_gbps(const ThroughputParams& p, std::uint32_t cycles_per_word) {
    const WordCost cost{cycles_per_word, p.cycles_per_msg};
    DirectRig rig(p.common, detail::server_config(p.common, 1, 1, SelectorConfig{}));
    RxSinkApp app(cost);
    rig.server.bind(0, kServerPort, 0, app);

    const SimTime end = p.warmup + p.window;
    std::uint64_t in_window = 0;
    rig.server.set_record_observer([&](const MessageRecord& r) {
        if (r.finished > p.warmup && r.finished <= end) ++in_window;
    });
    const auto per_msg = cost.time(p.message_bytes).picos();
    const std::uint64_t backlog = end.picos() / per_msg + 16;
    const auto payload = detail::filler(p.message_bytes);
    for (std::uint64_t i = 0; i < backlog; ++i) {
        RpcMeta meta{i, 0, 0, SimTime{}};
        rig.server.nic().inject_rx(make_message(kServerPort, 0, kClientPort, payload, meta));
    }
    rig.engine.run_until(end);
    return static_cast<double>(in_window) * p.message_bytes * 8.0 / static_cast<double>(p.window.picos()) * 1000.0;
}

double measure_tx_gbps(const ThroughputParams& p, std::uint32_t cycles_per_word) {
    const WordCost cost{cycles_per_word, p.cycles_per_msg};
    DirectRig rig(p.common, detail::server_config(p.common, 1, 1, SelectorConfig{}));
    TxStreamApp app(cost, p.message_bytes, 0, kClientPort);
    rig.server.bind(0, kServerPort, 0, app);
    rig.client.set_sink([](Message&&) {});

    const SimTime end = p.warmup + p.window;
    std::uint64_t bits = 0;
    rig.server.nic().uplink()->set_tx_observer([&](const Packet& pkt, SimTime, SimTime done) {
        if (done > p.warmup && done <= end) bits += static_cast<std::uint64_t>(pkt.wire_bytes) * 8;
    });
    const std::uint64_t backlog = end.picos() / cost.time(p.message_bytes).picos() + 16;
    for (std::uint64_t i = 0; i < backlog; ++i) {
        rig.server.nic().inject_rx(make_message(kServerPort, 0, kClientPort, std::vector<std::uint8_t>(8, 0)));
    }
    rig.engine.run_until(end);
    return static_cast<double>(bits) / static_cast<double>(p.window.picos()) * 1000.0;
}

double measure_packet_rate(const ThroughputParams& p) {
    Engine engine;
    HostConfig hc = detail::endpoint_config(p.common, 0);
    hc.pipeline = p.common.pipeline;
    hc.pipeline.line_rate_bps = p.common.fabric.rate_bps;
    Host server(engine, hc);

    struct Discard : PacketReceiver {
        void receive_packet(Packet&&) override {}
    } discard;
    Link wire(engine, p.common.fabric.link(), "gen->nic");
    Link back(engine, p.common.fabric.link(), "nic->gen");
    wire.connect(server);
    back.connect(discard);
    server.nic().attach_uplink(back);

    const SimTime end = p.warmup + p.window;
    std::uint64_t in_window = 0;
    server.set_sink([&](Message&&) {
        const SimTime t = engine.now();
        if (t > p.warmup && t <= end) ++in_window;
    });

    const std::uint32_t payload = p.rate_frame_bytes - kHeaderBytes;
    const std::uint64_t count = end.picos() / wire.serialization(p.rate_frame_bytes).picos() + 64;
    for (std::uint64_t i = 0; i < count; ++i) {
        Packet pkt;
        pkt.kind = PacketKind::Data;
        pkt.payload_bytes = payload;
        pkt.wire_bytes = p.rate_frame_bytes;
        pkt.msg = MsgId{1, kClientPort, 0, kServerPort, static_cast<std::uint32_t>(i)};
        pkt.total_pkts = 1;
        pkt.msg_len = payload;
        pkt.payload.assign(payload, 0);
        wire.transmit(std::move(pkt), SimTime{});
    }
    engine.run_until(end);
    return static_cast<double>(in_window) / (static_cast<double>(p.window.picos()) * 1e-12);
}

ThroughputResult run_throughput(const ThroughputParams& p) {
    ThroughputResult r;
    r.fixed_rx_gbps = measure_rx_gbps(p, p.fixed_cycles_per_word);
    r.fixed_tx_gbps = measure_tx_gbps(p, p.fixed_cycles_per_word);
    r.variable_rx_gbps = measure_rx_gbps(p, p.variable_cycles_per_word);
    r.variable_tx_gbps = measure_tx_gbps(p, p.variable_cycles_per_word);
    r.packet_rate_computed = nic_packet_rate(p.rate_frame_bytes, p.common.fabric.rate_bps);
    r.packet_rate_measured = measure_packet_rate(p);
    return r;
}

ExperimentResult throughput_experiment(const ThroughputParams& p, const std::string& name) {
    const auto r = run_throughput(p);
    ExperimentResult out;
    out.metrics.push_back(MetricRow{name + "/fixed", "rx_gbps", r.fixed_rx_gbps, "Gb/s"});
    out.metrics.push_back(MetricRow{name + "/fixed", "tx_gbps", r.fixed_tx_gbps, "Gb/s"});
    out.metrics.push_back(MetricRow{name + "/variable", "rx_gbps", r.variable_rx_gbps, "Gb/s"});
    out.metrics.push_back(MetricRow{name + "/variable", "tx_gbps", r.variable_tx_gbps, "Gb/s"});
    out.metrics.push_back(MetricRow{name + "/nic", "packet_rate_computed", r.packet_rate_computed, "pps"});
    out.metrics.push_back(MetricRow{name + "/nic", "packet_rate_measured", r.packet_rate_measured, "pps"});
    out.log.push_back("fixed rx " + fmt_fixed(r.fixed_rx_gbps, 2) + " tx " + fmt_fixed(r.fixed_tx_gbps, 2) +
                      " Gb/s; variable rx " + fmt_fixed(r.variable_rx_gbps, 2) + " tx " +
                      fmt_fixed(r.variable_tx_gbps, 2) + " Gb/s; " + fmt_fixed(r.packet_rate_measured / 1e6, 2) +
                      " Mpps");
    return out;
}

}  // namespace nanosim
