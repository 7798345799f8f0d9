#include "nanosim/net/switch.hpp"

#include <algorithm>

namespace nanosim {

const char* to_string(QueueAction a) {
    switch (a) {
        case QueueAction::Enq: return "ENQ";
        case QueueAction::Deq: return "DEQ";
        case QueueAction::Trim: return "TRIM";
        case QueueAction::Drop: return "DROP";
    }
    return "?";
}

bool SwitchPort::fits(const Packet& pkt) const {
    if (cfg_.capacity_pkts != 0 && data_pkts_ + 1 > cfg_.capacity_pkts) return false;
    if (cfg_.capacity_bytes != 0 && data_bytes_ + pkt.wire_bytes > cfg_.capacity_bytes) return false;
    return true;
}

void SwitchPort::record(SimTime t, QueueAction a) {
    if (tracing_) trace_.push_back(QueueTraceEvent{t, data_bytes_, data_pkts_, a});
}

EnqueueResult SwitchPort::enqueue(Packet pkt, SimTime now) {
    pkt.enq_ts = now;
    if (pkt.priority_class() == PriorityClass::Control) {
        control_.push_back(std::move(pkt));
        return EnqueueResult::Enqueued;
    }
    if (fits(pkt)) {
        data_bytes_ += pkt.wire_bytes;
        ++data_pkts_;
        peak_pkts = std::max(peak_pkts, data_pkts_);
        peak_bytes = std::max(peak_bytes, data_bytes_);
        data_.push_back(std::move(pkt));
        ++enqueued;
        record(now, QueueAction::Enq);
        return EnqueueResult::Enqueued;
    }
    if (cfg_.trimming) {
        pkt.kind = PacketKind::Trim;
        pkt.wire_bytes = kHeaderBytes;
        pkt.payload_bytes = 0;
        pkt.payload.clear();
        control_.push_back(std::move(pkt));
        ++trimmed;
        record(now, QueueAction::Trim);
        return EnqueueResult::Trimmed;
    }
    ++dropped;
    record(now, QueueAction::Drop);
    return EnqueueResult::Dropped;
}

std::optional<Packet> SwitchPort::begin_service() {
    if (in_service_) throw SimError("switch port already serializing a packet");
    std::deque<Packet>* q = !control_.empty() ? &control_ : (!data_.empty() ? &data_ : nullptr);
    if (q == nullptr) return std::nullopt;
    Packet pkt = std::move(q->front());
    q->pop_front();
    in_service_ = true;
    service_is_data_ = (q == &data_);
    service_bytes_ = pkt.wire_bytes;
    return pkt;
}

void SwitchPort::end_service(SimTime now) {
    if (!in_service_) throw SimError("switch port end_service without a packet in service");
    in_service_ = false;
    if (service_is_data_) {
        data_bytes_ -= service_bytes_;
        --data_pkts_;
    }
    ++dequeued;
    record(now, QueueAction::Deq);
}

std::optional<Packet> SwitchPort::dequeue(SimTime now) {
    auto pkt = begin_service();
    if (pkt) end_service(now);
    return pkt;
}

Switch::Switch(Engine& engine, std::string name, std::size_t index, SimTime forwarding_latency)
    : engine_(engine), name_(std::move(name)), index_(index), forwarding_latency_(forwarding_latency) {}

std::size_t Switch::add_port(Link& egress, SwitchPortConfig cfg, PortPeer peer) {
    ports_.push_back(PortState{SwitchPort(cfg), &egress, peer});
    return ports_.size() - 1;
}

void Switch::set_route(HostId dst, std::size_t port) {
    if (port >= ports_.size()) {
        throw ConfigError("switch " + name_ + ": route to host " + std::to_string(dst) +
                          " names missing port " + std::to_string(port));
    }
    routes_[dst] = port;
}

std::optional<std::size_t> Switch::route(HostId dst) const {
    auto it = routes_.find(dst);
    if (it == routes_.end()) return std::nullopt;
    return it->second;
}

void Switch::receive_packet(Packet&& pkt) {
    auto out = route(pkt.destination());
    if (!out) throw SimError("switch " + name_ + ": no route to host " + std::to_string(pkt.destination()));
    if (forwarding_latency_ == SimTime{}) {
        enqueue(*out, std::move(pkt));
        return;
    }
    engine_.schedule_in(forwarding_latency_,
                        [this, port = *out, p = std::move(pkt)]() mutable { enqueue(port, std::move(p)); });
}

EnqueueResult Switch::enqueue(std::size_t port, Packet pkt) {
    const auto result = ports_.at(port).queue.enqueue(std::move(pkt), engine_.now());
    try_start(port);
    return result;
}

void Switch::try_start(std::size_t port) {
    PortState& ps = ports_.at(port);
    if (ps.queue.in_service()) return;
    auto pkt = ps.queue.begin_service();
    if (!pkt) return;
    const SimTime start = ps.link->transmit(std::move(*pkt));
    const SimTime end = ps.link->busy_until();
    (void)start;
    engine_.schedule(end, [this, port] {
        ports_.at(port).queue.end_service(engine_.now());
        try_start(port);
    });
}

}  // namespace nanosim
