#pragma once

// Two transports joined by a channel that trims (NDP) or drops (timeout)
// DATA packets at random and jitters every delivery. Like a switch port,
// each direction keeps FIFO order within a class, while control packets
// (trimmed headers included) may overtake data.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nanosim/sim/rng.hpp"
#include "nanosim/transport/transport.hpp"

namespace nanosim::testing {

struct LossPattern {
    TransportMode mode = TransportMode::Ndp;
    double data_loss = 0.0;  // trim probability in NDP mode, drop probability otherwise
    double ack_loss = 0.0;   // timeout mode only; NDP control is never lost
    std::uint32_t window = 0;
    std::uint32_t messages = 8;
    std::uint32_t max_len = 8192;
    SimTime base_delay = SimTime::ns(500);
    SimTime jitter = SimTime::ns(300);
};

struct PairResult {
    std::uint32_t sent = 0;
    std::uint32_t delivered = 0;
    std::uint32_t duplicates_delivered = 0;
    std::uint32_t corrupted = 0;
    std::uint32_t missing = 0;
    bool pools_free = false;
    bool nothing_outstanding = false;
    std::uint64_t trims = 0;
    std::uint64_t drops = 0;
    std::uint64_t retransmissions = 0;
    std::uint64_t pulls = 0;
    // Smallest gap between consecutive PULLs emitted by one host.
    SimTime min_pull_gap = SimTime::max();
    SimTime pacing_interval{};
    std::string failure;
};

inline PairResult run_lossy_pair(const LossPattern& pat, std::uint64_t seed) {
    Engine engine;
    RngStream chan(seed, 1);
    RngStream gen(seed, 2);

    TransportConfig cfg;
    cfg.mode = pat.mode;
    cfg.initial_window_pkts = pat.window;

    std::unique_ptr<Transport> hosts[2];
    std::map<std::uint64_t, std::vector<std::uint8_t>> expect;
    std::map<std::uint64_t, std::uint32_t> seen;
    PairResult r;
    r.pacing_interval = cfg.pacing_interval();
    SimTime last_pull[2] = {SimTime::max(), SimTime::max()};
    SimTime last_arrival[2][2] = {};

    auto make_emit = [&](int from) {
        return [&, from](Packet&& p) {
            const int to = 1 - from;
            if (p.kind == PacketKind::Pull) {
                const SimTime now = engine.now();
                if (last_pull[from] != SimTime::max()) {
                    r.min_pull_gap = std::min(r.min_pull_gap, now - last_pull[from]);
                }
                last_pull[from] = now;
            }
            if (p.kind == PacketKind::Data && chan.bernoulli(pat.data_loss)) {
                if (pat.mode == TransportMode::Ndp) {
                    p.kind = PacketKind::Trim;
                    p.wire_bytes = kHeaderBytes;
                    p.payload_bytes = 0;
                    p.payload.clear();
                    ++r.trims;
                } else {
                    ++r.drops;
                    return;
                }
            } else if (p.kind == PacketKind::Ack && pat.mode == TransportMode::Timeout &&
                       chan.bernoulli(pat.ack_loss)) {
                ++r.drops;
                return;
            }
            const SimTime delay = pat.base_delay + SimTime::ps(chan.uniform_int(pat.jitter.picos() + 1));
            SimTime& fifo = last_arrival[from][p.priority_class() == PriorityClass::Data ? 1 : 0];
            fifo = std::max(fifo, engine.now() + delay);
            auto shared = std::make_shared<Packet>(std::move(p));
            engine.schedule(fifo, [&, to, shared] { hosts[to]->rx_packet(std::move(*shared)); });
        };
    };
    for (int h = 0; h < 2; ++h) {
        hosts[h] = std::make_unique<Transport>(
            engine, static_cast<HostId>(h + 1), cfg, make_emit(h), [&](Message&& m) {
                auto it = expect.find(m.meta.rpc_id);
                if (it == expect.end()) {
                    ++r.corrupted;
                    return;
                }
                if (++seen[m.meta.rpc_id] > 1) ++r.duplicates_delivered;
                if (m.payload != it->second) ++r.corrupted;
            });
    }

    for (std::uint32_t i = 0; i < pat.messages; ++i) {
        const int from = static_cast<int>(gen.uniform_int(2));
        const auto len = static_cast<std::uint32_t>(1 + gen.uniform_int(pat.max_len));
        std::vector<std::uint8_t> bytes(len);
        for (auto& b : bytes) b = static_cast<std::uint8_t>(gen.next_u64());
        const SimTime at = SimTime::ps(gen.uniform_int(2'000'000));
        RpcMeta meta;
        meta.rpc_id = i + 1;
        expect[meta.rpc_id] = bytes;
        const HostId peer = static_cast<HostId>(2 - from);
        const Port port = static_cast<Port>(gen.uniform_int(3));
        engine.schedule(at, [&, from, peer, port, meta, bytes = std::move(bytes)]() mutable {
            auto st = hosts[from]->tx_message(make_message(port, peer, port, std::move(bytes), meta));
            if (st != TxStatus::Accepted) r.failure = "transmit rejected";
        });
        ++r.sent;
    }
    engine.run();

    for (const auto& [id, bytes] : expect) {
        (void)bytes;
        if (seen[id] == 0) ++r.missing;
        else ++r.delivered;
    }
    r.pools_free = true;
    r.nothing_outstanding = true;
    for (auto& h : hosts) {
        r.pools_free = r.pools_free && h->tx_pool().all_free() && h->rx_pool().all_free();
        r.nothing_outstanding = r.nothing_outstanding && h->outstanding_tx() == 0 && h->outstanding_rx() == 0;
        r.retransmissions += h->stats().retransmissions;
        r.pulls += h->stats().pulls_sent;
    }
    return r;
}

inline bool pair_ok(const PairResult& r) {
    return r.failure.empty() && r.missing == 0 && r.duplicates_delivered == 0 && r.corrupted == 0 &&
           r.delivered == r.sent && r.pools_free && r.nothing_outstanding &&
           (r.min_pull_gap == SimTime::max() || r.min_pull_gap >= r.pacing_interval);
}

}  // namespace nanosim::testing
