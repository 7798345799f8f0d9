#include "nanosim/core/host.hpp"

namespace nanosim {

Host::Host(Engine& engine, HostConfig cfg)
    : cfg_(cfg), nic_(engine, cfg.id, cfg.pipeline, cfg.transport, cfg.selector, cfg.num_cores) {
    for (std::size_t c = 0; c < cfg_.num_cores; ++c) {
        auto core = std::make_unique<Core>(engine, cfg_.id, c, cfg_.sched);
        core->set_emit([this](Message&& m) { nic_.send_message(std::move(m)); });
        core->set_done([this](std::size_t idx, Port port) { nic_.msg_done(idx, port); });
        cores_.push_back(std::move(core));
    }
    nic_.set_dispatch([this](std::size_t c, Message&& m) { cores_.at(c)->deliver(std::move(m)); });
}

std::size_t Host::bind(std::size_t core, Port port, std::uint32_t priority, App& app) {
    if (core >= cores_.size()) {
        throw ConfigError("host " + std::to_string(cfg_.id) + ": no core " + std::to_string(core));
    }
    const std::size_t tid = cores_[core]->bind(port, priority, app);
    nic_.bind(port, core, priority);
    return tid;
}

void Host::set_record_observer(Core::Observer obs) {
    for (auto& c : cores_) c->set_observer(obs);
}

}  // namespace nanosim
