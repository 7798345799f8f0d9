#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nanosim/core/app.hpp"
#include "nanosim/sim/engine.hpp"

namespace nanosim {

enum class SchedMode { HwInterrupt, Timer };

/// When a downgraded thread gets its base priority back.
enum class RestorePolicy { NextMessage, Never };

struct SchedulerConfig {
    SchedMode mode = SchedMode::HwInterrupt;
    SimTime timer_period = SimTime::us(5);
    SimTime ctx_switch = SimTime::cycles(160);
    bool mpt_enabled = true;
    SimTime mpt_bound = SimTime::us(1);
    RestorePolicy restore = RestorePolicy::NextMessage;
    bool idle_rotation = true;
    SimTime idle_timeout = SimTime::us(5);
    std::size_t max_threads = 4;
};

const char* to_string(SchedMode m);
const char* to_string(RestorePolicy p);

enum class ThreadState { Idle, Active, Running };

struct ThreadStats {
    std::uint64_t processed = 0;
    std::uint64_t preemptions = 0;
    std::uint64_t downgrades = 0;
    SimTime busy{};
};

struct ThreadControlBlock {
    std::size_t id = 0;
    Port port = 0;
    std::uint32_t base_priority = 0;
    std::uint32_t effective_priority = 0;
    App* app = nullptr;
    std::deque<Message> local_rx;

    bool processing = false;
    Message current;
    SimTime service{};    // sampled service time of `current`
    SimTime remaining{};  // service still owed to `current`
    SimTime msg_start{};
    SimTime run_accum{};  // time actually spent running `current`
    EventHandle downgrade_event;
    ThreadStats stats;

    bool active() const { return processing || !local_rx.empty(); }
    /// Arrival timestamp of the oldest message this thread holds.
    SimTime head_ts() const { return processing ? current.arrived : local_rx.front().arrived; }
};

/// Completion record for one message, for traces and tests.
struct MessageRecord {
    std::size_t thread = 0;
    Port port = 0;
    std::uint64_t rpc_id = 0;
    SimTime arrived;
    SimTime started;
    SimTime finished;
    SimTime service;
    SimTime run_time;
    std::uint32_t preemptions = 0;
};

/// One core: up to four hardware threads with local RX queues, a
/// priority scheduler that fires on message arrival, completion, processing
/// time overrun and idle timeout (or only on a periodic timer), and a fixed
/// context-switch cost.
class Core {
public:
    using Emit = std::function<void(Message&&)>;
    using Done = std::function<void(std::size_t core, Port port)>;
    using Observer = std::function<void(const MessageRecord&)>;

    Core(Engine& engine, HostId host, std::size_t index, SchedulerConfig cfg);
    Core(const Core&) = delete;
    Core& operator=(const Core&) = delete;

    /// Registers a thread on `port`. Ports are unique per core.
    std::size_t bind(Port port, std::uint32_t priority, App& app);

    /// Message handed over by the NIC's core selector.
    void deliver(Message msg);

    void set_emit(Emit e) { emit_ = std::move(e); }
    void set_done(Done d) { done_ = std::move(d); }
    void set_observer(Observer o) { observer_ = std::move(o); }

    std::size_t index() const { return index_; }
    const SchedulerConfig& config() const { return cfg_; }
    std::size_t num_threads() const { return threads_.size(); }
    const ThreadControlBlock& thread(std::size_t i) const { return threads_.at(i); }
    std::optional<std::size_t> thread_for_port(Port port) const;
    ThreadState state(std::size_t thread) const;
    std::optional<std::size_t> loaded() const { return loaded_; }
    bool switching() const { return switching_; }
    std::uint64_t context_switches() const { return switches_; }

private:
    std::optional<std::size_t> best_thread() const;
    void reschedule();
    void timer_tick();
    void ensure_tick();
    void start_switch(std::optional<std::size_t> target);
    void finish_switch(std::optional<std::size_t> target);
    void run_loaded();
    void start_message(ThreadControlBlock& t);
    void resume(ThreadControlBlock& t);
    void suspend(ThreadControlBlock& t);
    void complete(std::size_t tid);
    void downgrade(std::size_t tid);
    void enter_idle();
    void on_idle_timeout(std::uint64_t epoch);
    AppContext context(const ThreadControlBlock& t) const;

    Engine& engine_;
    HostId host_;
    std::size_t index_;
    SchedulerConfig cfg_;
    std::vector<ThreadControlBlock> threads_;
    std::optional<std::size_t> loaded_;
    bool switching_ = false;
    SimTime segment_start_{};
    EventHandle completion_event_;
    bool running_ = false;
    std::vector<std::uint32_t> preempt_count_;
    std::uint64_t switches_ = 0;

    bool tick_pending_ = false;
    std::uint64_t idle_epoch_ = 0;
    bool idle_ = false;
    std::size_t rotations_ = 0;

    Emit emit_;
    Done done_;
    Observer observer_;
};

}  // namespace nanosim
