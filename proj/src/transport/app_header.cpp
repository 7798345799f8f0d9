#include "nanosim/transport/app_header.hpp"

#include <stdexcept>

namespace nanosim {

std::uint64_t AppHeader::encode() const {
    return static_cast<std::uint64_t>(msg_len) << 48 | static_cast<std::uint64_t>(peer_ip) << 16 | peer_port;
}

AppHeader AppHeader::decode(std::uint64_t word) {
    AppHeader h;
    h.msg_len = static_cast<std::uint16_t>(word >> 48);
    h.peer_ip = static_cast<HostId>((word >> 16) & 0xFFFFFFFFULL);
    h.peer_port = static_cast<Port>(word & 0xFFFF);
    return h;
}

Message make_message(Port local_port, HostId peer, Port peer_port, std::vector<std::uint8_t> payload,
                     RpcMeta meta) {
    if (payload.size() > 0xFFFF) throw std::invalid_argument("message longer than 65535 bytes");
    Message m;
    m.local_port = local_port;
    m.header.msg_len = static_cast<std::uint16_t>(payload.size());
    m.header.peer_ip = peer;
    m.header.peer_port = peer_port;
    m.payload = std::move(payload);
    m.meta = meta;
    return m;
}

}  // namespace nanosim
