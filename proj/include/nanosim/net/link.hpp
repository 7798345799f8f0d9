#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "nanosim/net/packet.hpp"
#include "nanosim/sim/engine.hpp"

namespace nanosim {

struct LinkConfig {
    std::uint64_t rate_bps = 200'000'000'000ULL;
    SimTime propagation = SimTime::ns(43);
};

/// Serialization time, rounded up to the next picosecond.
SimTime serialization_time(std::uint32_t wire_bytes, std::uint64_t rate_bps);

/// Unidirectional point-to-point link. Packets handed to the link queue
/// behind whatever is already serializing and are delivered in order,
/// ser + propagation after their transmission starts.
class Link {
public:
    using TxObserver = std::function<void(const Packet&, SimTime start, SimTime end)>;

    Link(Engine& engine, LinkConfig cfg, std::string name);

    void connect(PacketReceiver& dst) { dst_ = &dst; }
    const LinkConfig& config() const { return cfg_; }
    const std::string& name() const { return name_; }

    SimTime serialization(std::uint32_t wire_bytes) const {
        return serialization_time(wire_bytes, cfg_.rate_bps);
    }

    /// Queues `pkt` for transmission no earlier than `at` (>= now). Returns
    /// the time its first bit goes on the wire.
    SimTime transmit(Packet pkt, SimTime at);
    SimTime transmit(Packet pkt) { return transmit(std::move(pkt), engine_.now()); }

    SimTime busy_until() const { return busy_until_; }
    bool idle() const { return busy_until_ <= engine_.now(); }

    void set_tx_observer(TxObserver obs) { observer_ = std::move(obs); }

    std::uint64_t packets_sent() const { return packets_; }
    std::uint64_t bytes_sent() const { return bytes_; }

private:
    Engine& engine_;
    LinkConfig cfg_;
    std::string name_;
    PacketReceiver* dst_ = nullptr;
    SimTime busy_until_{};
    TxObserver observer_;
    std::uint64_t packets_ = 0;
    std::uint64_t bytes_ = 0;
};

}  // namespace nanosim
