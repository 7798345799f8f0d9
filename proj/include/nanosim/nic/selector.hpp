#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nanosim/net/packet.hpp"

namespace nanosim {

enum class SelectorKind { Jbsq, Rss };

struct SelectorConfig {
    SelectorKind kind = SelectorKind::Jbsq;
    /// Per-core bound on outstanding messages for each port.
    std::uint32_t n = 2;
    /// RSS only: explicit port -> core entries. Unlisted ports use port % cores.
    std::map<Port, std::size_t> rss_map;
};

/// Core selection state for one NIC: a per-port bitmap of cores with a
/// thread bound to the port, and per-(port, core) outstanding counts.
///
/// JBSQ picks the bound core with the smallest count below n (lowest id on
/// ties). RSS sends each port to one fixed core, still capped at n.
class CoreSelector {
public:
    CoreSelector(std::size_t num_cores, SelectorConfig cfg);

    void bind(Port port, std::size_t core);
    bool bound(Port port, std::size_t core) const;
    /// True when at least one core can ever accept messages for the port.
    bool accepts(Port port) const;
    std::uint64_t bitmap(Port port) const;

    std::optional<std::size_t> select(Port port) const;
    void on_dispatch(Port port, std::size_t core);
    void on_done(Port port, std::size_t core);

    std::uint32_t count(Port port, std::size_t core) const;
    std::uint32_t bound_n() const { return cfg_.n; }
    std::uint32_t max_count_seen() const { return max_seen_; }
    const SelectorConfig& config() const { return cfg_; }
    std::size_t num_cores() const { return num_cores_; }

    /// Fixed RSS target for a port (whether or not it is bound there).
    std::size_t rss_core(Port port) const;

private:
    struct PortState {
        std::uint64_t bitmap = 0;
        std::vector<std::uint32_t> counts;
    };
    const PortState* find(Port port) const;

    std::size_t num_cores_;
    SelectorConfig cfg_;
    std::map<Port, PortState> ports_;
    std::uint32_t max_seen_ = 0;
};

}  // namespace nanosim
