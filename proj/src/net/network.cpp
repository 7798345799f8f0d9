#include "nanosim/net/network.hpp"

#include <algorithm>
#include <set>

namespace nanosim {

Link& Network::make_link(LinkConfig cfg, std::string name) {
    links_.emplace_back(engine_, cfg, std::move(name));
    return links_.back();
}

Switch& Network::add_switch(std::string name, SimTime forwarding_latency) {
    switches_.push_back(std::make_unique<Switch>(engine_, std::move(name), switches_.size(), forwarding_latency));
    return *switches_.back();
}

Network::Attachment Network::attach_host(HostId id, PacketReceiver& host, Switch& sw, LinkConfig link,
                                         SwitchPortConfig port_cfg) {
    if (std::find(hosts_.begin(), hosts_.end(), id) != hosts_.end()) {
        throw ConfigError("host " + std::to_string(id) + " attached twice");
    }
    Link& up = make_link(link, "h" + std::to_string(id) + "->" + sw.name());
    Link& down = make_link(link, sw.name() + "->h" + std::to_string(id));
    up.connect(sw);
    down.connect(host);
    PortPeer peer;
    peer.kind = PortPeer::Kind::Host;
    peer.host = id;
    const std::size_t port = sw.add_port(down, port_cfg, peer);
    sw.set_route(id, port);
    hosts_.push_back(id);
    return Attachment{&up, &down, port};
}

std::pair<Link*, Link*> Network::connect_direct(PacketReceiver& a, PacketReceiver& b, LinkConfig link) {
    Link& ab = make_link(link, "direct-a->b");
    Link& ba = make_link(link, "direct-b->a");
    ab.connect(b);
    ba.connect(a);
    return {&ab, &ba};
}

std::pair<std::size_t, std::size_t> Network::connect_switches(Switch& a, Switch& b, LinkConfig link,
                                                              SwitchPortConfig cfg) {
    Link& ab = make_link(link, a.name() + "->" + b.name());
    Link& ba = make_link(link, b.name() + "->" + a.name());
    ab.connect(b);
    ba.connect(a);
    PortPeer to_b{PortPeer::Kind::Switch, 0, b.index()};
    PortPeer to_a{PortPeer::Kind::Switch, 0, a.index()};
    return {a.add_port(ab, cfg, to_b), b.add_port(ba, cfg, to_a)};
}

void Network::validate() const {
    for (const auto& start : switches_) {
        for (HostId h : hosts_) {
            std::set<std::size_t> visited;
            const Switch* cur = start.get();
            for (;;) {
                if (!visited.insert(cur->index()).second) {
                    throw ConfigError("routing loop towards host " + std::to_string(h) +
                                      " starting at switch " + start->name());
                }
                auto port = cur->route(h);
                if (!port) {
                    throw ConfigError("switch " + cur->name() + " has no route to host " + std::to_string(h));
                }
                const PortPeer& peer = cur->peer(*port);
                if (peer.kind == PortPeer::Kind::Host) {
                    if (peer.host != h) {
                        throw ConfigError("switch " + cur->name() + " routes host " + std::to_string(h) +
                                          " to the port of host " + std::to_string(peer.host));
                    }
                    break;
                }
                cur = switches_.at(peer.switch_index).get();
            }
        }
    }
}

}  // namespace nanosim
