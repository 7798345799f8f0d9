#pragma once

#include <vector>

#include "nanosim/sim/sim_time.hpp"

namespace nanosim {

/// Spaces PULL departures at least `interval` apart so the data they clock
/// out arrives at the bottleneck at line rate.
class PullPacer {
public:
    explicit PullPacer(SimTime interval) : interval_(interval) {}

    /// Departure slot for a PULL requested at `now`: max(now, next_slot).
    SimTime pace(SimTime now);

    SimTime interval() const { return interval_; }
    SimTime next_slot() const { return next_slot_; }
    const std::vector<SimTime>& departures() const { return departures_; }

private:
    SimTime interval_;
    SimTime next_slot_{};
    std::vector<SimTime> departures_;
};

}  // namespace nanosim
