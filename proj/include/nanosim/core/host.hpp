#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nanosim/core/core.hpp"
#include "nanosim/nic/nic.hpp"

namespace nanosim {

struct HostConfig {
    HostId id = 0;
    std::size_t num_cores = 1;
    PipelineConfig pipeline;
    TransportConfig transport;
    SelectorConfig selector;
    SchedulerConfig sched;
};

/// A nanoPU host: NIC plus cores. A host with zero cores is an endpoint
/// whose messages go to a sink callback.
class Host : public PacketReceiver {
public:
    Host(Engine& engine, HostConfig cfg);
    Host(const Host&) = delete;
    Host& operator=(const Host&) = delete;

    void receive_packet(Packet&& pkt) override { nic_.receive_packet(std::move(pkt)); }

    /// Runs `app` on a new thread of `core`, bound to `port`.
    std::size_t bind(std::size_t core, Port port, std::uint32_t priority, App& app);

    TxStatus send(Message msg) { return nic_.send_message(std::move(msg)); }
    void set_sink(Nic::Sink sink) { nic_.set_sink(std::move(sink)); }
    void set_record_observer(Core::Observer obs);

    HostId id() const { return cfg_.id; }
    const HostConfig& config() const { return cfg_; }
    Nic& nic() { return nic_; }
    const Nic& nic() const { return nic_; }
    Core& core(std::size_t i) { return *cores_.at(i); }
    const Core& core(std::size_t i) const { return *cores_.at(i); }
    std::size_t num_cores() const { return cores_.size(); }

private:
    HostConfig cfg_;
    Nic nic_;
    std::vector<std::unique_ptr<Core>> cores_;
};

}  // namespace nanosim
