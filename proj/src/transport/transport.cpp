#include "nanosim/transport/transport.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

#include "nanosim/net/link.hpp"

namespace nanosim {

std::uint32_t TransportConfig::window_packets() const {
    if (initial_window_pkts != 0) return initial_window_pkts;
    const auto frame_bits = static_cast<u128>(frame_bytes(mtu_payload)) * 8;
    const u128 bdp_bits = static_cast<u128>(line_rate_bps) * rtt_estimate.picos() /
                                       1'000'000'000'000ULL;
    const auto pkts = static_cast<std::uint32_t>((bdp_bits + frame_bits - 1) / frame_bits);
    return std::max<std::uint32_t>(1, pkts);
}

SimTime TransportConfig::pacing_interval() const {
    if (pull_interval != SimTime{}) return pull_interval;
    return serialization_time(frame_bytes(mtu_payload), line_rate_bps);
}

Transport::Transport(Engine& engine, HostId self, TransportConfig cfg, Emit emit, Deliver deliver)
    : engine_(engine),
      self_(self),
      cfg_(std::move(cfg)),
      emit_(std::move(emit)),
      deliver_(std::move(deliver)),
      tx_pool_(cfg_.tx_classes),
      rx_pool_(cfg_.rx_classes),
      pacer_(cfg_.pacing_interval()),
      window_(cfg_.window_packets()) {
    if (cfg_.mtu_payload == 0) throw ConfigError("transport: mtu_payload must be positive");
}

std::uint32_t Transport::packets_for(std::uint32_t len) const {
    return len == 0 ? 1 : (len + cfg_.mtu_payload - 1) / cfg_.mtu_payload;
}

TxStatus Transport::tx_message(Message msg) {
    const std::uint32_t len = msg.length();
    if (msg.header.msg_len != len) {
        throw std::invalid_argument("application header length " + std::to_string(msg.header.msg_len) +
                                    " does not match payload of " + std::to_string(len) + "B");
    }
    if (len > tx_pool_.largest()) {
        throw std::invalid_argument("message of " + std::to_string(len) + "B exceeds the largest buffer class");
    }
    auto buf = tx_pool_.alloc(std::max<std::uint32_t>(len, 1));
    if (!buf) {
        ++stats_.tx_rejected;
        return TxStatus::NoBuffer;
    }
    std::copy(msg.payload.begin(), msg.payload.end(), tx_pool_.data(*buf).begin());

    auto& seq = next_seq_[{msg.header.peer_ip, msg.header.peer_port, msg.local_port}];
    if (seq > 0xFFFF) throw SimError("per-flow message sequence exceeded 16 bits");

    TxState st;
    st.id = MsgId{self_, msg.local_port, msg.header.peer_ip, msg.header.peer_port, seq++};
    st.msg_len = len;
    st.total = packets_for(len);
    st.acked.assign(st.total, false);
    st.retx_queued.assign(st.total, false);
    st.buffer = *buf;
    st.meta = msg.meta;

    const MsgId id = st.id;
    auto [it, inserted] = tx_.emplace(id, std::move(st));
    if (!inserted) throw SimError("duplicate message id on transmit");
    ++stats_.msgs_sent;

    TxState& s = it->second;
    const std::uint32_t burst = cfg_.mode == TransportMode::Ndp ? std::min(s.total, window_) : s.total;
    for (std::uint32_t i = 0; i < burst; ++i) send_data(s, s.next_unsent++, false);
    if (cfg_.mode == TransportMode::Timeout) arm_rto(s);
    return TxStatus::Accepted;
}

void Transport::send_data(TxState& st, std::uint32_t idx, bool retransmit) {
    const std::uint32_t off = idx * cfg_.mtu_payload;
    const std::uint32_t n = std::min(cfg_.mtu_payload, st.msg_len - std::min(st.msg_len, off));
    Packet p;
    p.kind = PacketKind::Data;
    p.payload_bytes = n;
    p.wire_bytes = frame_bytes(n);
    p.msg = st.id;
    p.pkt_index = idx;
    p.total_pkts = st.total;
    p.msg_len = st.msg_len;
    p.meta = st.meta;
    auto data = tx_pool_.data(st.buffer);
    p.payload.assign(data.begin() + off, data.begin() + off + n);
    ++stats_.data_sent;
    if (retransmit) ++stats_.retransmissions;
    emit_(std::move(p));
}

void Transport::send_control(PacketKind kind, const MsgId& id, std::uint32_t idx, std::uint32_t total) {
    switch (kind) {
        case PacketKind::Ack: ++stats_.acks_sent; break;
        case PacketKind::Nack: ++stats_.nacks_sent; break;
        case PacketKind::Pull: ++stats_.pulls_sent; break;
        default: break;
    }
    emit_(make_control(kind, id, idx, total));
}

void Transport::schedule_pull(const MsgId& id, std::uint32_t idx, std::uint32_t total) {
    const SimTime dep = pacer_.pace(engine_.now());
    if (dep == engine_.now()) {
        send_control(PacketKind::Pull, id, idx, total);
        return;
    }
    engine_.schedule(dep, [this, id, idx, total] { send_control(PacketKind::Pull, id, idx, total); });
}

void Transport::arm_rto(TxState& st) {
    const MsgId id = st.id;
    st.rto_event = engine_.schedule_in(cfg_.rto, [this, id] { on_rto(id); });
}

void Transport::on_rto(const MsgId& id) {
    auto it = tx_.find(id);
    if (it == tx_.end()) return;
    TxState& st = it->second;
    ++stats_.rto_fires;
    if (++st.rto_rounds > cfg_.max_retransmissions) {
        retire_tx(id, false);
        return;
    }
    for (std::uint32_t i = 0; i < st.total; ++i) {
        if (!st.acked[i]) send_data(st, i, true);
    }
    arm_rto(st);
}

void Transport::retire_tx(const MsgId& id, bool success) {
    auto it = tx_.find(id);
    if (it == tx_.end()) return;
    engine_.cancel(it->second.rto_event);
    tx_pool_.free(it->second.buffer);
    tx_.erase(it);
    if (success) {
        ++stats_.msgs_acked;
    } else {
        ++stats_.msgs_failed;
    }
}

void Transport::rx_packet(Packet&& pkt) {
    switch (pkt.kind) {
        case PacketKind::Data: on_data(std::move(pkt)); break;
        case PacketKind::Trim: on_trim(pkt); break;
        case PacketKind::Ack: on_ack(pkt); break;
        case PacketKind::Nack: on_nack(pkt); break;
        case PacketKind::Pull: on_pull(pkt); break;
    }
}

void Transport::on_data(Packet&& pkt) {
    const MsgId id = pkt.msg;
    if (completed_.contains(id)) {
        ++stats_.duplicates;
        send_control(PacketKind::Ack, id, pkt.pkt_index, pkt.total_pkts);
        return;
    }
    auto it = rx_.find(id);
    if (it == rx_.end()) {
        RxState st;
        st.msg_len = pkt.msg_len;
        st.total = pkt.total_pkts;
        st.received.assign(pkt.total_pkts, false);
        st.first_pkt_ts = engine_.now();
        st.meta = pkt.meta;
        it = rx_.emplace(id, std::move(st)).first;
    }
    RxState& st = it->second;
    if (!st.buffer) {
        st.buffer = rx_pool_.alloc(std::max<std::uint32_t>(st.msg_len, 1));
        if (!st.buffer) {
            // No reassembly buffer: the packet is dropped at ingress, unacknowledged.
            ++stats_.rx_dropped_no_buffer;
            if (st.received_count == 0 && st.new_data_pulls == 0) rx_.erase(it);
            return;
        }
    }
    if (pkt.pkt_index >= st.total) throw SimError("packet index beyond message length");
    if (st.received[pkt.pkt_index]) {
        ++stats_.duplicates;
        send_control(PacketKind::Ack, id, pkt.pkt_index, st.total);
        return;
    }
    auto buf = rx_pool_.data(*st.buffer);
    std::copy(pkt.payload.begin(), pkt.payload.end(), buf.begin() + pkt.pkt_index * cfg_.mtu_payload);
    st.received[pkt.pkt_index] = true;
    ++st.received_count;
    send_control(PacketKind::Ack, id, pkt.pkt_index, st.total);

    if (cfg_.mode == TransportMode::Ndp && st.total > window_ && st.new_data_pulls < st.total - window_) {
        ++st.new_data_pulls;
        schedule_pull(id, pkt.pkt_index, st.total);
    }

    if (st.received_count == st.total) {
        Message msg;
        msg.local_port = id.dst_port;
        msg.header.msg_len = static_cast<std::uint16_t>(st.msg_len);
        msg.header.peer_ip = id.src_host;
        msg.header.peer_port = id.src_port;
        msg.payload.assign(buf.begin(), buf.begin() + st.msg_len);
        msg.meta = st.meta;
        rx_pool_.free(*st.buffer);
        rx_.erase(it);
        completed_.insert(id);
        ++stats_.msgs_delivered;
        deliver_(std::move(msg));
    }
}

void Transport::on_trim(const Packet& pkt) {
    ++stats_.trims_received;
    if (cfg_.mode != TransportMode::Ndp) return;
    send_control(PacketKind::Nack, pkt.msg, pkt.pkt_index, pkt.total_pkts);
    schedule_pull(pkt.msg, pkt.pkt_index, pkt.total_pkts);
}

void Transport::on_ack(const Packet& pkt) {
    auto it = tx_.find(pkt.msg);
    if (it == tx_.end()) return;
    TxState& st = it->second;
    if (pkt.pkt_index >= st.total || st.acked[pkt.pkt_index]) return;
    st.acked[pkt.pkt_index] = true;
    if (++st.acked_count == st.total) retire_tx(pkt.msg, true);
}

void Transport::on_nack(const Packet& pkt) {
    auto it = tx_.find(pkt.msg);
    if (it == tx_.end()) return;
    TxState& st = it->second;
    const std::uint32_t i = pkt.pkt_index;
    if (i >= st.total || st.acked[i] || st.retx_queued[i]) return;
    st.retx_queued[i] = true;
    st.retx.push_back(i);
}

void Transport::on_pull(const Packet& pkt) {
    auto it = tx_.find(pkt.msg);
    if (it == tx_.end()) return;
    TxState& st = it->second;
    while (!st.retx.empty()) {
        const std::uint32_t i = st.retx.front();
        st.retx.pop_front();
        st.retx_queued[i] = false;
        if (!st.acked[i]) {
            send_data(st, i, true);
            return;
        }
    }
    if (st.next_unsent < st.total) send_data(st, st.next_unsent++, false);
}

}  // namespace nanosim
