#include "nanosim/transport/pull_pacer.hpp"

#include <algorithm>

namespace nanosim {

SimTime PullPacer::pace(SimTime now) {
    const SimTime dep = std::max(now, next_slot_);
    next_slot_ = dep + interval_;
    departures_.push_back(dep);
    return dep;
}

}  // namespace nanosim
