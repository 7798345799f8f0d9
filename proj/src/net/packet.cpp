#include "nanosim/net/packet.hpp"

#include "nanosim/sim/rng.hpp"

namespace nanosim {

const char* to_string(PacketKind k) {
    switch (k) {
        case PacketKind::Data: return "DATA";
        case PacketKind::Ack: return "ACK";
        case PacketKind::Nack: return "NACK";
        case PacketKind::Pull: return "PULL";
        case PacketKind::Trim: return "TRIM";
    }
    return "?";
}

std::size_t MsgIdHash::operator()(const MsgId& m) const noexcept {
    std::uint64_t h = mix64(m.src_host * 0x9E3779B97F4A7C15ULL + m.src_port);
    h = mix64(h ^ (static_cast<std::uint64_t>(m.dst_host) << 16 | m.dst_port));
    return static_cast<std::size_t>(mix64(h ^ m.msg_seq));
}

HostId Packet::destination() const {
    // DATA and TRIM flow sender -> receiver; the rest flow back.
    if (kind == PacketKind::Data || kind == PacketKind::Trim) return msg.dst_host;
    return msg.src_host;
}

Packet make_control(PacketKind kind, const MsgId& msg, std::uint32_t pkt_index,
                    std::uint32_t total_pkts) {
    Packet p;
    p.kind = kind;
    p.wire_bytes = kHeaderBytes;
    p.payload_bytes = 0;
    p.msg = msg;
    p.pkt_index = pkt_index;
    p.total_pkts = total_pkts;
    return p;
}

}  // namespace nanosim
