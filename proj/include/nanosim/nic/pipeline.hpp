#pragma once

#include <cstdint>

#include "nanosim/sim/sim_time.hpp"

namespace nanosim {

/// Fixed-function NIC latencies. The internal loopback is ingress + egress;
/// each direction adds its MAC/serdes latency on top of that.
struct PipelineConfig {
    SimTime ingress = SimTime::ns(7);
    SimTime egress = SimTime::ns(6);
    SimTime mac_rx = SimTime::ns(26);
    SimTime mac_tx = SimTime::ns(26);
    std::uint64_t line_rate_bps = 200'000'000'000ULL;

    SimTime loopback() const { return ingress + egress; }
    SimTime wire_to_wire() const { return mac_rx + ingress + egress + mac_tx; }
    SimTime rx_latency() const { return mac_rx + ingress; }
    SimTime tx_latency() const { return egress + mac_tx; }

    /// Same pipeline with the MAC stages removed.
    static PipelineConfig without_mac();
    /// Every stage zero; used for idealized load-generator endpoints.
    static PipelineConfig zero();
};

/// Packets per second the pipeline sustains at its line rate.
/// Throws std::invalid_argument below the 64B minimum frame.
double nic_packet_rate(std::uint32_t frame_bytes, std::uint64_t line_rate_bps = 200'000'000'000ULL);

}  // namespace nanosim
