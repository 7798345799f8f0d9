#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "nanosim/core/host.hpp"
#include "nanosim/sim/rng.hpp"
#include "nanosim/workload/metrics.hpp"

namespace nanosim {

/// One request as chosen by the generator.
struct RequestSpec {
    HostId dst = 0;
    Port port = 0;
    std::vector<std::uint8_t> payload;
    std::uint32_t klass = 0;
    std::uint32_t priority = 0;
};

/// Picks request n's destination and contents from the choice stream.
using RequestFactory = std::function<RequestSpec(std::uint64_t index, RngStream& choice)>;

struct LoadGenConfig {
    double rate_rps = 1e6;
    std::uint64_t num_requests = 20000;
    std::uint64_t warmup_discard = 0;
    Port client_port = 1000;
    /// Time spent on the client before a request leaves its NIC.
    SimTime client_compute{};
    SimTime start{};
    std::uint64_t seed = 1;
    /// Stream ids; arrivals and request choices never share a stream.
    std::uint64_t arrival_stream = 0;
    std::uint64_t choice_stream = 1;
};

/// Open-loop Poisson client running on an endpoint host. Send times depend
/// only on (seed, rate); latency runs from issue to response reassembly.
class LoadGenerator {
public:
    LoadGenerator(Engine& engine, Host& client, LoadGenConfig cfg, RequestFactory factory);
    ~LoadGenerator();
    LoadGenerator(const LoadGenerator&) = delete;
    LoadGenerator& operator=(const LoadGenerator&) = delete;

    void start();

    const LoadGenConfig& config() const { return cfg_; }
    std::uint64_t issued() const { return issued_; }
    std::uint64_t completed() const { return completed_; }
    std::uint64_t rejected() const { return rejected_; }
    bool done() const { return issued_ == cfg_.num_requests && outstanding_.empty(); }
    /// Requests never answered; rejected sends count here too.
    std::uint64_t incomplete() const { return cfg_.num_requests - completed_; }
    /// Completed samples after warmup removal, in completion order.
    std::vector<LatencySample> samples() const;
    const std::vector<SimTime>& send_times() const { return send_times_; }
    /// (priority, class) of every request without a response.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> unanswered() const;
    SimTime last_completion() const { return last_completion_; }

private:
    void issue();
    void transmit(std::uint64_t id, RequestSpec spec);
    void on_response(Message&& msg);

    Engine& engine_;
    Host& client_;
    LoadGenConfig cfg_;
    RequestFactory factory_;
    RngStream arrivals_;
    RngStream choices_;
    std::uint64_t issued_ = 0;
    std::uint64_t completed_ = 0;
    std::uint64_t rejected_ = 0;
    struct Pending {
        SimTime send;
        std::uint32_t priority;
        std::uint32_t klass;
    };
    std::unordered_map<std::uint64_t, Pending> outstanding_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rejected_kinds_;
    std::vector<LatencySample> samples_;
    std::vector<SimTime> send_times_;
    SimTime last_completion_{};
};

}  // namespace nanosim
