#include "nanosim/nic/nic.hpp"

#include <algorithm>

namespace nanosim {

Nic::Nic(Engine& engine, HostId id, PipelineConfig pipeline, TransportConfig transport, SelectorConfig selector,
         std::size_t num_cores)
    : engine_(engine),
      id_(id),
      pipeline_(pipeline),
      selector_(num_cores, std::move(selector)),
      transport_(
          engine, id, std::move(transport), [this](Packet&& p) { on_transport_packet(std::move(p)); },
          [this](Message&& m) { on_reassembled(std::move(m)); }) {
    stats_.dispatched.assign(num_cores, 0);
}

void Nic::receive_packet(Packet&& pkt) {
    ++stats_.rx_packets;
    const SimTime now = engine_.now();
    if (ingress_obs_) ingress_obs_(pkt, now);
    // The pipeline accepts one frame per line-rate slot; below line rate this
    // never delays anything.
    const SimTime start = std::max(now, ingress_free_);
    ingress_free_ = start + serialization_time(pkt.wire_bytes, pipeline_.line_rate_bps);
    const SimTime ready = start + pipeline_.rx_latency();
    if (ready == now) {
        transport_.rx_packet(std::move(pkt));
        return;
    }
    engine_.schedule(ready, [this, p = std::move(pkt)]() mutable { transport_.rx_packet(std::move(p)); });
}

void Nic::on_transport_packet(Packet&& pkt) {
    if (!uplink_) throw SimError("nic: host " + std::to_string(id_) + " has no uplink");
    ++stats_.tx_packets;
    const SimTime handoff = engine_.now() + pipeline_.tx_latency();
    if (egress_obs_) egress_obs_(pkt, handoff);
    uplink_->transmit(std::move(pkt), handoff);
}

TxStatus Nic::send_message(Message msg) { return transport_.tx_message(std::move(msg)); }

void Nic::bind(Port port, std::size_t core, std::uint32_t priority) {
    selector_.bind(port, core);
    queues_[port].priority = priority;
}

void Nic::on_reassembled(Message&& msg) {
    msg.arrived = engine_.now();
    ++stats_.rx_messages;
    if (sink_) {
        sink_(std::move(msg));
        return;
    }
    rx_enqueue(std::move(msg));
}

void Nic::inject_rx(Message msg) {
    msg.arrived = engine_.now();
    ++stats_.rx_messages;
    rx_enqueue(std::move(msg));
}

void Nic::rx_enqueue(Message&& msg) {
    const Port port = msg.local_port;
    if (!selector_.accepts(port)) {
        ++stats_.dropped_unbound;
        return;
    }
    auto& q = queues_[port];
    msg.meta.priority = q.priority;
    q.messages.push_back(std::move(msg));
    try_dispatch(port);
}

void Nic::try_dispatch(Port port) {
    auto it = queues_.find(port);
    if (it == queues_.end()) return;
    auto& q = it->second.messages;
    while (!q.empty()) {
        auto core = selector_.select(port);
        if (!core) break;
        Message m = std::move(q.front());
        q.pop_front();
        selector_.on_dispatch(port, *core);
        ++stats_.dispatched[*core];
        if (!dispatch_) throw SimError("nic: no core dispatch installed");
        dispatch_(*core, std::move(m));
    }
}

void Nic::msg_done(std::size_t core, Port port) {
    selector_.on_done(port, core);
    try_dispatch(port);
}

std::size_t Nic::queue_depth(Port port) const {
    auto it = queues_.find(port);
    return it == queues_.end() ? 0 : it->second.messages.size();
}

std::uint32_t Nic::port_priority(Port port) const {
    auto it = queues_.find(port);
    return it == queues_.end() ? 0 : it->second.priority;
}

}  // namespace nanosim
