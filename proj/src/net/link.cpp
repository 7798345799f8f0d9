#include "nanosim/net/link.hpp"

#include <algorithm>

namespace nanosim {

SimTime serialization_time(std::uint32_t wire_bytes, std::uint64_t rate_bps) {
    if (rate_bps == 0) throw ConfigError("link rate must be positive");
    const u128 bits_ps = static_cast<u128>(wire_bytes) * 8 * 1'000'000'000'000ULL;
    const u128 ps = (bits_ps + rate_bps - 1) / rate_bps;
    return SimTime::ps(static_cast<std::uint64_t>(ps));
}

Link::Link(Engine& engine, LinkConfig cfg, std::string name)
    : engine_(engine), cfg_(cfg), name_(std::move(name)) {
    if (cfg_.rate_bps == 0) throw ConfigError("link " + name_ + ": rate must be positive");
}

SimTime Link::transmit(Packet pkt, SimTime at) {
    if (pkt.wire_bytes < kMinFrameBytes) {
        throw ConfigError("link " + name_ + ": frame of " + std::to_string(pkt.wire_bytes) +
                          "B is below the 64B minimum");
    }
    if (dst_ == nullptr) throw SimError("link " + name_ + " is not connected");
    if (at < engine_.now()) throw SimError("link " + name_ + ": transmit in the past");

    const SimTime start = std::max(at, busy_until_);
    const SimTime end = start + serialization(pkt.wire_bytes);
    busy_until_ = end;
    ++packets_;
    bytes_ += pkt.wire_bytes;
    if (observer_) observer_(pkt, start, end);
    pkt.send_ts = start;
    engine_.schedule(end + cfg_.propagation,
                     [dst = dst_, p = std::move(pkt)]() mutable { dst->receive_packet(std::move(p)); });
    return start;
}

}  // namespace nanosim
