#include "nanosim/nic/pipeline.hpp"

#include <stdexcept>
#include <string>

#include "nanosim/net/packet.hpp"

namespace nanosim {

PipelineConfig PipelineConfig::without_mac() {
    PipelineConfig p;
    p.mac_rx = SimTime{};
    p.mac_tx = SimTime{};
    return p;
}

PipelineConfig PipelineConfig::zero() {
    PipelineConfig p;
    p.ingress = p.egress = p.mac_rx = p.mac_tx = SimTime{};
    return p;
}

double nic_packet_rate(std::uint32_t frame_bytes, std::uint64_t line_rate_bps) {
    if (frame_bytes < kMinFrameBytes) {
        throw std::invalid_argument("frame of " + std::to_string(frame_bytes) + "B is below the 64B minimum");
    }
    return static_cast<double>(line_rate_bps) / (static_cast<double>(frame_bytes) * 8.0);
}

}  // namespace nanosim
