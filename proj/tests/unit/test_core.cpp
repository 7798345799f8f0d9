#include <map>
#include <vector>

#include "doctest.h"
#include "nanosim/core/core.hpp"

using namespace nanosim;

namespace {

// Service time is carried in the message's rpc meta klass field, in ns.
class TimedApp : public App {
public:
    std::string name() const override { return "timed"; }
    SimTime service_time(const Message& m, const AppContext&) override { return SimTime::ns(m.meta.klass); }
    std::vector<Message> on_complete(Message, const AppContext&) override { return {}; }
};

struct CoreRig {
    Engine engine;
    Core core;
    TimedApp app;
    std::map<std::uint64_t, MessageRecord> recs;
    explicit CoreRig(SchedulerConfig cfg = {}) : core(engine, 1, 0, cfg) {
        core.set_observer([this](const MessageRecord& r) { recs[r.rpc_id] = r; });
    }
    void at(SimTime t, Port port, std::uint64_t id, std::uint32_t service_ns) {
        engine.schedule(t, [this, port, id, service_ns] {
            RpcMeta meta;
            meta.rpc_id = id;
            meta.klass = service_ns;
            Message m = make_message(port, 2, 0, {}, meta);
            m.arrived = engine.now();
            core.deliver(std::move(m));
        });
    }
};

}  // namespace

TEST_CASE("thread binding rules") {
    Engine e;
    Core c(e, 1, 0, SchedulerConfig{});
    TimedApp app;
    CHECK(c.bind(0, 0, app) == 0);
    CHECK_THROWS_AS(c.bind(0, 1, app), ConfigError);
    CHECK_THROWS_AS(c.bind(1, 4, app), ConfigError);
    c.bind(1, 0, app);
    c.bind(2, 0, app);
    c.bind(3, 0, app);
    CHECK_THROWS_AS(c.bind(4, 0, app), ConfigError);
    CHECK(c.thread_for_port(2) == 2u);
    CHECK(c.state(0) == ThreadState::Idle);
    CHECK(std::string(to_string(SchedMode::Timer)) == "timer");
    CHECK(std::string(to_string(RestorePolicy::NextMessage)) == "next_message");
}

TEST_CASE("higher priority arrival preempts after one context switch") {
    SchedulerConfig cfg;
    cfg.idle_rotation = false;
    CoreRig r(cfg);
    r.core.bind(1, 1, r.app);  // loaded first
    r.core.bind(0, 0, r.app);
    r.at(SimTime{}, 1, 1, 4000);
    r.at(SimTime::us(1), 0, 2, 500);
    r.engine.run();
    CHECK(r.recs[2].started == SimTime::ns(1050));
    CHECK(r.recs[2].finished == SimTime::ns(1550));
    // 4000 + 500 + 2 switches
    CHECK(r.recs[1].finished == SimTime::ns(4600));
    CHECK(r.recs[1].preemptions == 1);
    CHECK(r.recs[1].run_time == SimTime::ns(4000));
    CHECK(r.core.context_switches() == 2);
}

TEST_CASE("a message for the running thread does not interrupt") {
    CoreRig r;
    r.core.bind(0, 0, r.app);
    r.at(SimTime{}, 0, 1, 300);
    r.at(SimTime::ns(100), 0, 2, 300);
    r.engine.run();
    CHECK(r.core.context_switches() == 0);
    CHECK(r.recs[2].started == SimTime::ns(300));
    CHECK(r.recs[2].finished == SimTime::ns(600));
}

TEST_CASE("equal priorities run in arrival order") {
    CoreRig r;
    r.core.bind(0, 0, r.app);
    r.core.bind(1, 0, r.app);
    r.core.bind(2, 0, r.app);
    r.at(SimTime{}, 0, 1, 200);
    r.at(SimTime::ns(10), 2, 2, 200);
    r.at(SimTime::ns(20), 1, 3, 200);
    r.engine.run();
    CHECK(r.recs[1].finished < r.recs[2].started);
    CHECK(r.recs[2].finished < r.recs[3].started);
    CHECK(r.recs[2].started == SimTime::ns(250));
}

TEST_CASE("timer mode switches only on period boundaries") {
    SchedulerConfig cfg;
    cfg.mode = SchedMode::Timer;
    CoreRig r(cfg);
    r.core.bind(1, 1, r.app);
    r.core.bind(0, 0, r.app);
    r.at(SimTime{}, 1, 1, 10000);
    r.at(SimTime::ns(300), 0, 2, 500);
    r.engine.run();
    CHECK(r.recs[2].started == SimTime::ns(5050));
    CHECK(r.recs[1].finished > SimTime::us(10));
}

TEST_CASE("overrunning thread is downgraded and preempted") {
    CoreRig r;
    r.core.bind(0, 0, r.app);
    r.core.bind(1, 0, r.app);
    r.at(SimTime{}, 0, 1, 5000);
    r.at(SimTime::ns(100), 1, 2, 500);
    r.engine.run();
    CHECK(r.recs[2].started == SimTime::ns(1050));
    CHECK(r.core.thread(0).stats.downgrades == 1);
    CHECK(r.recs[1].finished == SimTime::ns(5000 + 500 + 100));
    // restored when the next message starts
    r.at(r.engine.now() + SimTime::us(1), 0, 3, 100);
    r.engine.run();
    CHECK(r.core.thread(0).effective_priority == 0);
}

TEST_CASE("short messages are never downgraded") {
    CoreRig r;
    r.core.bind(0, 0, r.app);
    r.at(SimTime{}, 0, 1, 500);
    r.engine.run();
    CHECK(r.core.thread(0).stats.downgrades == 0);
}

TEST_CASE("restore never keeps the downgrade") {
    SchedulerConfig cfg;
    cfg.restore = RestorePolicy::Never;
    CoreRig r(cfg);
    r.core.bind(0, 0, r.app);
    r.at(SimTime{}, 0, 1, 2000);
    r.at(r.engine.now() + SimTime::us(5), 0, 2, 100);
    r.engine.run();
    CHECK(r.core.thread(0).effective_priority == 1);
}

TEST_CASE("mpt disabled leaves long messages alone") {
    SchedulerConfig cfg;
    cfg.mpt_enabled = false;
    CoreRig r(cfg);
    r.core.bind(0, 0, r.app);
    r.core.bind(1, 0, r.app);
    r.at(SimTime{}, 0, 1, 5000);
    r.at(SimTime::ns(100), 1, 2, 500);
    r.engine.run();
    CHECK(r.recs[2].started == SimTime::ns(5050));
}

TEST_CASE("two preemptions conserve remaining service") {
    CoreRig r;
    r.core.bind(1, 1, r.app);
    r.core.bind(0, 0, r.app);
    r.at(SimTime{}, 1, 1, 3000);
    r.at(SimTime::ns(500), 0, 2, 200);
    r.at(SimTime::ns(1500), 0, 3, 200);
    r.engine.run();
    CHECK(r.recs[1].preemptions == 2);
    CHECK(r.recs[1].run_time == r.recs[1].service);
    CHECK(r.recs[1].finished == SimTime::ns(3000 + 400 + 4 * 50));
}
