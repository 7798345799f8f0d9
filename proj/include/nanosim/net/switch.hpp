#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nanosim/net/link.hpp"

namespace nanosim {

struct SwitchPortConfig {
    std::uint32_t capacity_pkts = 0;   // 0 = unlimited
    std::uint64_t capacity_bytes = 0;  // 0 = unlimited
    bool trimming = true;

    static SwitchPortConfig unlimited() { return {0, 0, false}; }
};

enum class EnqueueResult { Enqueued, Trimmed, Dropped };
enum class QueueAction { Enq, Deq, Trim, Drop };

const char* to_string(QueueAction a);

/// Data-queue occupancy after the action was applied.
struct QueueTraceEvent {
    SimTime t;
    std::uint64_t occupancy_bytes = 0;
    std::uint32_t occupancy_pkts = 0;
    QueueAction action = QueueAction::Enq;
};

/// One output port: a bounded data FIFO and an unbounded control FIFO.
/// Control always leaves first. A data packet keeps its buffer space until
/// its serialization finishes (end_service).
class SwitchPort {
public:
    explicit SwitchPort(SwitchPortConfig cfg) : cfg_(cfg) {}

    EnqueueResult enqueue(Packet pkt, SimTime now);

    bool has_work() const { return !control_.empty() || !data_.empty(); }
    bool in_service() const { return in_service_; }

    /// Takes the next packet to transmit (control first).
    std::optional<Packet> begin_service();
    /// Releases the buffer held by the packet returned from begin_service.
    void end_service(SimTime now);
    /// begin_service + end_service at the same instant.
    std::optional<Packet> dequeue(SimTime now);

    std::uint64_t occupancy_bytes() const { return data_bytes_; }
    std::uint32_t occupancy_pkts() const { return data_pkts_; }
    std::size_t control_depth() const { return control_.size(); }
    const SwitchPortConfig& config() const { return cfg_; }

    void enable_trace(bool on) { tracing_ = on; }
    const std::vector<QueueTraceEvent>& trace() const { return trace_; }

    std::uint64_t enqueued = 0;
    std::uint64_t trimmed = 0;
    std::uint64_t dropped = 0;
    std::uint64_t dequeued = 0;
    std::uint32_t peak_pkts = 0;
    std::uint64_t peak_bytes = 0;

private:
    bool fits(const Packet& pkt) const;
    void record(SimTime t, QueueAction a);

    SwitchPortConfig cfg_;
    std::deque<Packet> control_;
    std::deque<Packet> data_;
    std::uint64_t data_bytes_ = 0;
    std::uint32_t data_pkts_ = 0;
    bool in_service_ = false;
    bool service_is_data_ = false;
    std::uint32_t service_bytes_ = 0;
    bool tracing_ = false;
    std::vector<QueueTraceEvent> trace_;
};

/// Where a switch port leads.
struct PortPeer {
    enum class Kind { Host, Switch } kind = Kind::Host;
    HostId host = 0;
    std::size_t switch_index = 0;
};

/// Output-queued single-stage switch with static destination routing.
class Switch : public PacketReceiver {
public:
    Switch(Engine& engine, std::string name, std::size_t index, SimTime forwarding_latency = {});

    std::size_t add_port(Link& egress, SwitchPortConfig cfg, PortPeer peer);
    void set_route(HostId dst, std::size_t port);
    std::optional<std::size_t> route(HostId dst) const;

    void receive_packet(Packet&& pkt) override;
    EnqueueResult enqueue(std::size_t port, Packet pkt);

    std::size_t num_ports() const { return ports_.size(); }
    SwitchPort& port(std::size_t i) { return ports_.at(i).queue; }
    const SwitchPort& port(std::size_t i) const { return ports_.at(i).queue; }
    Link& egress(std::size_t i) { return *ports_.at(i).link; }
    const PortPeer& peer(std::size_t i) const { return ports_.at(i).peer; }
    const std::string& name() const { return name_; }
    std::size_t index() const { return index_; }
    SimTime forwarding_latency() const { return forwarding_latency_; }

private:
    struct PortState {
        SwitchPort queue;
        Link* link;
        PortPeer peer;
    };
    void try_start(std::size_t port);

    Engine& engine_;
    std::string name_;
    std::size_t index_;
    SimTime forwarding_latency_;
    std::deque<PortState> ports_;
    std::unordered_map<HostId, std::size_t> routes_;
};

}  // namespace nanosim
