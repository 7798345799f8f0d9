#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nanosim/sim/sim_time.hpp"

namespace nanosim {

using HostId = std::uint32_t;
using Port = std::uint16_t;

/// Fixed per-packet Ethernet/IP/transport overhead: an 8B payload travels in
/// a 72B frame and a 1024B payload in a 1088B frame.
inline constexpr std::uint32_t kHeaderBytes = 64;
inline constexpr std::uint32_t kMinFrameBytes = 64;

constexpr std::uint32_t frame_bytes(std::uint32_t payload) { return payload + kHeaderBytes; }

enum class PacketKind : std::uint8_t { Data, Ack, Nack, Pull, Trim };
enum class PriorityClass : std::uint8_t { Control, Data };

const char* to_string(PacketKind k);

struct MsgId {
    HostId src_host = 0;
    Port src_port = 0;
    HostId dst_host = 0;
    Port dst_port = 0;
    std::uint32_t msg_seq = 0;

    auto operator<=>(const MsgId&) const = default;
};

struct MsgIdHash {
    std::size_t operator()(const MsgId& m) const noexcept;
};

/// Simulation-only bookkeeping that rides along with a message end to end.
/// None of it is counted in wire bytes.
struct RpcMeta {
    std::uint64_t rpc_id = 0;
    std::uint32_t klass = 0;     // request class chosen by the generator
    std::uint32_t priority = 0;  // priority tag of the destination port
    SimTime issued_at{};         // when the client issued the request
};

struct Packet {
    PacketKind kind = PacketKind::Data;
    std::uint32_t wire_bytes = kMinFrameBytes;
    std::uint32_t payload_bytes = 0;
    MsgId msg{};
    std::uint32_t pkt_index = 0;
    std::uint32_t total_pkts = 1;
    std::uint32_t msg_len = 0;
    SimTime send_ts{};
    SimTime enq_ts{};
    RpcMeta meta{};
    std::vector<std::uint8_t> payload;

    PriorityClass priority_class() const {
        return kind == PacketKind::Data ? PriorityClass::Data : PriorityClass::Control;
    }
    /// Host the packet is travelling to.
    HostId destination() const;
};

/// Header-only control packet; direction follows from the kind.
Packet make_control(PacketKind kind, const MsgId& msg, std::uint32_t pkt_index,
                    std::uint32_t total_pkts);

/// Anything that can accept a packet from a link.
class PacketReceiver {
public:
    virtual ~PacketReceiver() = default;
    virtual void receive_packet(Packet&& pkt) = 0;
};

}  // namespace nanosim
