#include "nanosim/sim/engine.hpp"

#include <cmath>

namespace nanosim {

SimTime SimTime::from_ns(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("time must be finite and non-negative");
    return SimTime::ps(static_cast<std::uint64_t>(std::llround(v * 1000.0)));
}

std::string SimTime::ns_string() const {
    std::string frac = std::to_string(ps_ % 1000);
    frac.insert(0, 3 - frac.size(), '0');
    return std::to_string(ps_ / 1000) + "." + frac;
}

EventHandle Engine::schedule(SimTime fire_at, Action action, ComponentId target) {
    if (fire_at < now_) {
        throw SimError("event scheduled in the past: fire_at=" + fire_at.ns_string() +
                       "ns now=" + now_.ns_string() + "ns target=" + std::to_string(target));
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push(Entry{fire_at, seq, target, std::move(action)});
    pending_seqs_.insert(seq);
    live_ = pending_seqs_.size();
    return EventHandle{seq};
}

bool Engine::cancel(EventHandle handle) {
    if (!handle.valid()) return false;
    const bool erased = pending_seqs_.erase(handle.seq) > 0;
    live_ = pending_seqs_.size();
    return erased;
}

void Engine::drop_cancelled_head() {
    while (!heap_.empty() && !pending_seqs_.contains(heap_.top().seq)) heap_.pop();
}

std::optional<SimTime> Engine::next_event_time() {
    drop_cancelled_head();
    if (heap_.empty()) return std::nullopt;
    return heap_.top().fire_at;
}

SimTime Engine::run_until(SimTime limit) {
    for (;;) {
        drop_cancelled_head();
        if (heap_.empty() || heap_.top().fire_at > limit) break;
        // priority_queue::top is const; the entry is popped right after.
        Entry entry = std::move(const_cast<Entry&>(heap_.top()));
        heap_.pop();
        pending_seqs_.erase(entry.seq);
        live_ = pending_seqs_.size();
        now_ = entry.fire_at;
        ++executed_;
        entry.action();
    }
    return now_;
}

}  // namespace nanosim
