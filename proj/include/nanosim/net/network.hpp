#pragma once

#include <deque>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nanosim/net/switch.hpp"

namespace nanosim {

/// Owns links and switches and wires hosts into a topology.
class Network {
public:
    explicit Network(Engine& engine) : engine_(engine) {}
    Network(const Network&) = delete;
    Network& operator=(const Network&) = delete;

    Switch& add_switch(std::string name, SimTime forwarding_latency = {});
    /// Output-queued switch with zero forwarding delay; its ports should be
    /// attached with SwitchPortConfig::unlimited().
    Switch& add_zero_latency_switch(std::string name) { return add_switch(std::move(name)); }

    struct Attachment {
        Link* uplink;    // host -> switch
        Link* downlink;  // switch -> host
        std::size_t port;
    };
    /// Connects a host to a switch with a link pair and installs the route.
    Attachment attach_host(HostId id, PacketReceiver& host, Switch& sw, LinkConfig link,
                           SwitchPortConfig port_cfg);

    /// Two unidirectional links between a and b; returns {a->b, b->a}.
    std::pair<Link*, Link*> connect_direct(PacketReceiver& a, PacketReceiver& b, LinkConfig link);

    /// Links two switches; returns the port index on each side. Routes across
    /// the pair must be added with Switch::set_route.
    std::pair<std::size_t, std::size_t> connect_switches(Switch& a, Switch& b, LinkConfig link,
                                                         SwitchPortConfig cfg);

    /// Every switch must reach every attached host without revisiting a
    /// switch. Throws ConfigError naming the first bad route.
    void validate() const;

    Switch& switch_at(std::size_t i) { return *switches_.at(i); }
    std::size_t num_switches() const { return switches_.size(); }

private:
    Link& make_link(LinkConfig cfg, std::string name);

    Engine& engine_;
    std::deque<Link> links_;
    std::vector<std::unique_ptr<Switch>> switches_;
    std::vector<HostId> hosts_;
};

}  // namespace nanosim
