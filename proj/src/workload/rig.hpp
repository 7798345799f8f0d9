#pragma once

// Topology helpers shared by the scenario implementations.

#include <memory>
#include <vector>

#include "nanosim/net/network.hpp"
#include "nanosim/workload/experiments.hpp"

namespace nanosim::detail {

inline constexpr Port kClientPort = 1000;

HostConfig endpoint_config(const CommonParams& c, HostId id);
HostConfig server_config(const CommonParams& c, HostId id, std::size_t cores, SelectorConfig sel);

/// A load-generator endpoint (host 0) wired to one server (host 1) by a
/// direct link pair.
struct DirectRig {
    Engine engine;
    Network net{engine};
    Host client;
    Host server;

    DirectRig(const CommonParams& c, HostConfig server_cfg);
};

std::vector<std::uint8_t> filler(std::uint32_t bytes);
std::string load_tag(double load);

/// Summary rows, sample blocks and a sustained flag for one series.
void record_series(ExperimentResult& out, const std::string& series, const PointResult& pt,
                   const std::vector<LatencySample>& samples, std::uint64_t incomplete);

/// Samples / unanswered requests matching priority and class (negative = any).
std::vector<LatencySample> select_samples(const std::vector<LatencySample>& all, int priority, int klass);
std::uint64_t count_unanswered(const PointResult& pt, int priority, int klass);

}  // namespace nanosim::detail
