#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "nanosim/sim/sim_time.hpp"

namespace nanosim {

/// Raised for configuration errors detected while building or running a model.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the simulation reaches an impossible state.
class SimError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

using ComponentId = std::uint32_t;

struct EventHandle {
    std::uint64_t seq = 0;
    bool valid() const { return seq != 0; }
};

/// Single-threaded discrete-event kernel. Events are totally ordered by
/// (fire_at, seq); seq increases per insertion so ties run in schedule order.
class Engine {
public:
    using Action = std::function<void()>;

    SimTime now() const { return now_; }

    EventHandle schedule(SimTime fire_at, Action action, ComponentId target = 0);
    EventHandle schedule_in(SimTime delay, Action action, ComponentId target = 0) {
        return schedule(now_ + delay, std::move(action), target);
    }
    /// Returns false when the event already fired or was cancelled.
    bool cancel(EventHandle handle);

    /// Runs every event with fire_at <= limit. The clock stops at the last
    /// event executed and never jumps to the limit itself.
    SimTime run_until(SimTime limit);
    SimTime run() { return run_until(SimTime::max()); }

    bool empty() const { return live_ == 0; }
    std::size_t pending() const { return live_; }
    std::uint64_t executed() const { return executed_; }
    std::optional<SimTime> next_event_time();

private:
    struct Entry {
        SimTime fire_at;
        std::uint64_t seq;
        ComponentId target;
        Action action;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    void drop_cancelled_head();

    SimTime now_{};
    std::uint64_t next_seq_ = 1;
    std::uint64_t executed_ = 0;
    std::size_t live_ = 0;
    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    std::unordered_set<std::uint64_t> pending_seqs_;
};

}  // namespace nanosim
