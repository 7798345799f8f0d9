#pragma once

#include <cstdint>
#include <vector>

#include "nanosim/net/packet.hpp"

namespace nanosim {

/// The 64-bit word at the front of every application message.
/// Layout (MSB first): msg_len:16 | peer_ip:32 | peer_port:16. On RX the peer
/// is the source; on TX it is the destination.
struct AppHeader {
    std::uint16_t msg_len = 0;
    HostId peer_ip = 0;
    Port peer_port = 0;

    std::uint64_t encode() const;
    static AppHeader decode(std::uint64_t word);
    bool operator==(const AppHeader&) const = default;
};

/// An application-level RPC unit as seen by cores.
struct Message {
    Port local_port = 0;  // the bound port on this host
    AppHeader header;
    std::vector<std::uint8_t> payload;
    RpcMeta meta;
    SimTime arrived{};  // when it reached a global RX queue

    std::uint32_t length() const { return static_cast<std::uint32_t>(payload.size()); }
};

/// Convenience constructor that keeps header.msg_len in sync with the payload.
Message make_message(Port local_port, HostId peer, Port peer_port, std::vector<std::uint8_t> payload,
                     RpcMeta meta = {});

}  // namespace nanosim
