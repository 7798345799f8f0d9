#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <vector>

#include "nanosim/net/link.hpp"
#include "nanosim/nic/pipeline.hpp"
#include "nanosim/nic/selector.hpp"
#include "nanosim/transport/transport.hpp"

namespace nanosim {

struct NicStats {
    std::uint64_t rx_packets = 0;
    std::uint64_t tx_packets = 0;
    std::uint64_t rx_messages = 0;
    std::uint64_t dropped_unbound = 0;
    std::vector<std::uint64_t> dispatched;  // per core
};

/// NIC of one host: ingress/egress pipelines, the transport, one global RX
/// queue per bound port and the core selector feeding per-core queues.
///
/// With a sink installed the NIC acts as a bare endpoint and hands every
/// reassembled message to the sink instead of queueing it for cores.
class Nic : public PacketReceiver {
public:
    using Dispatch = std::function<void(std::size_t core, Message&&)>;
    using Sink = std::function<void(Message&&)>;
    using PacketObserver = std::function<void(const Packet&, SimTime)>;

    Nic(Engine& engine, HostId id, PipelineConfig pipeline, TransportConfig transport, SelectorConfig selector,
        std::size_t num_cores);
    Nic(const Nic&) = delete;
    Nic& operator=(const Nic&) = delete;

    void attach_uplink(Link& link) { uplink_ = &link; }
    Link* uplink() const { return uplink_; }

    /// A frame fully received from the wire.
    void receive_packet(Packet&& pkt) override;

    /// Message from a core (or endpoint application) to the network.
    TxStatus send_message(Message msg);

    void bind(Port port, std::size_t core, std::uint32_t priority);
    void set_dispatch(Dispatch d) { dispatch_ = std::move(d); }
    void set_sink(Sink s) { sink_ = std::move(s); }
    bool endpoint() const { return static_cast<bool>(sink_); }

    /// A core finished one message for `port`.
    void msg_done(std::size_t core, Port port);

    /// Places a message straight into the port's global RX queue, as if it
    /// had just been reassembled.
    void inject_rx(Message msg);

    /// Called when a frame enters the NIC from the wire.
    void set_ingress_observer(PacketObserver o) { ingress_obs_ = std::move(o); }
    /// Called when a frame leaves the NIC pipeline for the link.
    void set_egress_observer(PacketObserver o) { egress_obs_ = std::move(o); }

    HostId id() const { return id_; }
    const PipelineConfig& pipeline() const { return pipeline_; }
    Transport& transport() { return transport_; }
    const Transport& transport() const { return transport_; }
    const CoreSelector& selector() const { return selector_; }
    const NicStats& stats() const { return stats_; }
    std::size_t queue_depth(Port port) const;
    std::uint32_t port_priority(Port port) const;

private:
    struct PortQueue {
        std::deque<Message> messages;
        std::uint32_t priority = 0;
    };

    void on_transport_packet(Packet&& pkt);
    void on_reassembled(Message&& msg);
    void rx_enqueue(Message&& msg);
    void try_dispatch(Port port);

    Engine& engine_;
    HostId id_;
    PipelineConfig pipeline_;
    CoreSelector selector_;
    Transport transport_;
    Link* uplink_ = nullptr;
    Dispatch dispatch_;
    Sink sink_;
    PacketObserver ingress_obs_;
    PacketObserver egress_obs_;
    std::map<Port, PortQueue> queues_;
    SimTime ingress_free_{};
    NicStats stats_;
};

}  // namespace nanosim
