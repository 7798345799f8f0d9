#include "nanosim/core/core.hpp"

#include <string>

namespace nanosim {

const char* to_string(SchedMode m) { return m == SchedMode::HwInterrupt ? "hw" : "timer"; }

const char* to_string(RestorePolicy p) { return p == RestorePolicy::NextMessage ? "next_message" : "never"; }

Core::Core(Engine& engine, HostId host, std::size_t index, SchedulerConfig cfg)
    : engine_(engine), host_(host), index_(index), cfg_(cfg) {
    if (cfg_.max_threads == 0) throw ConfigError("scheduler: max_threads must be positive");
    if (cfg_.mode == SchedMode::Timer && cfg_.timer_period == SimTime{}) {
        throw ConfigError("scheduler: timer_period must be positive in timer mode");
    }
}

std::size_t Core::bind(Port port, std::uint32_t priority, App& app) {
    const std::string where = "core " + std::to_string(index_) + ": ";
    if (threads_.size() >= cfg_.max_threads) {
        throw ConfigError(where + "thread table full (" + std::to_string(cfg_.max_threads) + " threads)");
    }
    if (thread_for_port(port)) throw ConfigError(where + "port " + std::to_string(port) + " already bound");
    if (priority > 3) throw ConfigError(where + "priority must be 0..3");
    ThreadControlBlock t;
    t.id = threads_.size();
    t.port = port;
    t.base_priority = priority;
    t.effective_priority = priority;
    t.app = &app;
    threads_.push_back(std::move(t));
    preempt_count_.push_back(0);
    if (!loaded_) loaded_ = threads_.back().id;
    return threads_.back().id;
}

std::optional<std::size_t> Core::thread_for_port(Port port) const {
    for (const auto& t : threads_) {
        if (t.port == port) return t.id;
    }
    return std::nullopt;
}

ThreadState Core::state(std::size_t tid) const {
    if (loaded_ == tid && running_) return ThreadState::Running;
    return threads_.at(tid).active() ? ThreadState::Active : ThreadState::Idle;
}

AppContext Core::context(const ThreadControlBlock& t) const {
    return AppContext{engine_.now(), host_, index_, t.port};
}

std::optional<std::size_t> Core::best_thread() const {
    std::optional<std::size_t> best;
    for (const auto& t : threads_) {
        if (!t.active()) continue;
        if (!best) {
            best = t.id;
            continue;
        }
        const auto& b = threads_[*best];
        if (t.effective_priority < b.effective_priority ||
            (t.effective_priority == b.effective_priority && t.head_ts() < b.head_ts())) {
            best = t.id;
        }
    }
    return best;
}

void Core::deliver(Message msg) {
    auto tid = thread_for_port(msg.local_port);
    if (!tid) throw SimError("core " + std::to_string(index_) + ": no thread bound to port " +
                             std::to_string(msg.local_port));
    threads_[*tid].local_rx.push_back(std::move(msg));
    if (idle_) {
        idle_ = false;
        ++idle_epoch_;
    }
    if (cfg_.mode == SchedMode::HwInterrupt) {
        reschedule();
    } else {
        run_loaded();
        ensure_tick();
    }
}

void Core::reschedule() {
    if (switching_) return;
    const auto best = best_thread();
    if (!best) {
        enter_idle();
        return;
    }
    if (loaded_ == best) {
        run_loaded();
        return;
    }
    if (loaded_ && threads_[*loaded_].processing) {
        // Only a strictly higher priority preempts; equal priorities wait
        // for the running message to finish.
        if (threads_[*best].effective_priority < threads_[*loaded_].effective_priority) start_switch(best);
        return;
    }
    start_switch(best);
}

void Core::start_switch(std::optional<std::size_t> target) {
    if (loaded_ && running_) suspend(threads_[*loaded_]);
    switching_ = true;
    idle_ = false;
    ++switches_;
    engine_.schedule_in(cfg_.ctx_switch, [this, target] { finish_switch(target); });
}

void Core::finish_switch(std::optional<std::size_t> target) {
    switching_ = false;
    const auto best = best_thread();
    loaded_ = best ? best : target;
    if (cfg_.mode == SchedMode::Timer) {
        run_loaded();
        ensure_tick();
        return;
    }
    reschedule();
}

void Core::run_loaded() {
    if (!loaded_ || switching_ || running_) return;
    auto& t = threads_[*loaded_];
    if (t.processing) {
        resume(t);
    } else if (!t.local_rx.empty()) {
        start_message(t);
    }
}

void Core::start_message(ThreadControlBlock& t) {
    t.current = std::move(t.local_rx.front());
    t.local_rx.pop_front();
    t.processing = true;
    if (cfg_.restore == RestorePolicy::NextMessage) t.effective_priority = t.base_priority;
    t.msg_start = engine_.now();
    t.service = t.app->service_time(t.current, context(t));
    t.remaining = t.service;
    t.run_accum = SimTime{};
    preempt_count_[t.id] = 0;
    idle_ = false;
    if (cfg_.mpt_enabled && t.effective_priority == 0 && t.service > cfg_.mpt_bound) {
        const std::size_t id = t.id;
        t.downgrade_event = engine_.schedule(t.msg_start + cfg_.mpt_bound, [this, id] { downgrade(id); });
    }
    resume(t);
}

void Core::resume(ThreadControlBlock& t) {
    running_ = true;
    segment_start_ = engine_.now();
    const std::size_t id = t.id;
    completion_event_ = engine_.schedule(segment_start_ + t.remaining, [this, id] { complete(id); });
}

void Core::suspend(ThreadControlBlock& t) {
    const SimTime ran = engine_.now() - segment_start_;
    t.remaining -= ran;
    t.run_accum += ran;
    t.stats.busy += ran;
    engine_.cancel(completion_event_);
    running_ = false;
    ++t.stats.preemptions;
    ++preempt_count_[t.id];
}

void Core::complete(std::size_t tid) {
    auto& t = threads_[tid];
    const SimTime ran = engine_.now() - segment_start_;
    t.run_accum += ran;
    t.stats.busy += ran;
    t.remaining = SimTime{};
    running_ = false;
    t.processing = false;
    engine_.cancel(t.downgrade_event);
    ++t.stats.processed;

    MessageRecord rec{tid,           t.port,     t.current.meta.rpc_id, t.current.arrived, t.msg_start,
                      engine_.now(), t.service,  t.run_accum,           preempt_count_[tid]};
    const AppContext ctx = context(t);
    auto responses = t.app->on_complete(std::move(t.current), ctx);
    t.current = Message{};
    if (observer_) observer_(rec);
    for (auto& r : responses) {
        if (!emit_) throw SimError("core: no transmit path installed");
        emit_(std::move(r));
    }
    if (done_) done_(index_, t.port);

    if (cfg_.mode == SchedMode::HwInterrupt) {
        reschedule();
    } else {
        run_loaded();
        ensure_tick();
    }
}

void Core::downgrade(std::size_t tid) {
    auto& t = threads_[tid];
    if (!t.processing || t.effective_priority != 0) return;
    t.effective_priority = 1;
    ++t.stats.downgrades;
    if (cfg_.mode == SchedMode::HwInterrupt) reschedule();
}

void Core::enter_idle() {
    if (idle_) return;
    idle_ = true;
    rotations_ = 0;
    const std::uint64_t epoch = ++idle_epoch_;
    if (cfg_.idle_rotation && threads_.size() > 1) {
        engine_.schedule_in(cfg_.idle_timeout, [this, epoch] { on_idle_timeout(epoch); });
    }
}

void Core::on_idle_timeout(std::uint64_t epoch) {
    if (epoch != idle_epoch_ || !idle_ || switching_) return;
    if (rotations_ >= threads_.size() - 1) return;
    ++rotations_;
    const std::size_t next = loaded_ ? (*loaded_ + 1) % threads_.size() : 0;
    switching_ = true;
    ++switches_;
    engine_.schedule_in(cfg_.ctx_switch, [this, next, epoch] {
        switching_ = false;
        if (epoch == idle_epoch_ && idle_ && !best_thread()) {
            loaded_ = next;
            if (rotations_ < threads_.size() - 1) {
                engine_.schedule_in(cfg_.idle_timeout, [this, epoch] { on_idle_timeout(epoch); });
            }
            return;
        }
        finish_switch(next);
    });
}

void Core::ensure_tick() {
    if (tick_pending_) return;
    bool work = switching_;
    for (const auto& t : threads_) work = work || t.active();
    if (!work) return;
    const std::uint64_t p = cfg_.timer_period.picos();
    const SimTime next = SimTime::ps((engine_.now().picos() / p + 1) * p);
    tick_pending_ = true;
    engine_.schedule(next, [this] { timer_tick(); });
}

void Core::timer_tick() {
    tick_pending_ = false;
    if (!switching_) {
        const auto best = best_thread();
        if (best && loaded_ != best) {
            start_switch(best);
        } else {
            run_loaded();
        }
    }
    ensure_tick();
}

}  // namespace nanosim
