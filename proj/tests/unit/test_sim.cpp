#include <numeric>
#include <vector>

#include "doctest.h"
#include "nanosim/sim/csv.hpp"
#include "nanosim/sim/engine.hpp"
#include "nanosim/sim/rng.hpp"

using namespace nanosim;

TEST_CASE("cycle conversion at 3.2 GHz") {
    CHECK(SimTime::cycles(160) == SimTime::ns(50));
    CHECK(SimTime::cycles(2).picos() == 625);
    // odd counts round half up: 312.5 -> 313
    CHECK(SimTime::cycles(1).picos() == 313);
    CHECK(SimTime::cycles(134).picos() == 41875);
    CHECK(SimTime::from_ns(43.52).picos() == 43520);
    CHECK(SimTime::ps(65000).ns_string() == "65.000");
    CHECK(SimTime::ps(7).ns_string() == "0.007");
    CHECK_THROWS_AS(SimTime::ns(1) - SimTime::ns(2), std::logic_error);
    CHECK_THROWS_AS(SimTime::from_ns(-1), ConfigError);
}

TEST_CASE("engine orders by time then insertion") {
    Engine e;
    std::vector<std::string> log;
    e.schedule(SimTime::ps(100), [&] { log.push_back("A"); });
    e.schedule(SimTime::ps(100), [&] { log.push_back("B"); });
    e.schedule(SimTime::ps(50), [&] { log.push_back("50"); });
    e.schedule(SimTime::ps(30), [&] { log.push_back("30"); });
    e.run();
    CHECK(log == std::vector<std::string>{"30", "50", "A", "B"});
    CHECK(e.now() == SimTime::ps(100));
    CHECK(e.executed() == 4);
}

TEST_CASE("cancelled events never fire") {
    Engine e;
    bool fired = false;
    auto h = e.schedule(SimTime::ns(5), [&] { fired = true; });
    CHECK(e.pending() == 1);
    CHECK(e.cancel(h));
    CHECK_FALSE(e.cancel(h));
    CHECK(e.empty());
    CHECK(e.run() == SimTime{});
    CHECK_FALSE(fired);
}

TEST_CASE("run_until stops at the last executed event") {
    Engine e;
    CHECK(e.run_until(SimTime::us(1)) == SimTime{});
    e.schedule(SimTime::ns(65), [] {});
    e.schedule(SimTime::us(2), [] {});
    CHECK(e.run_until(SimTime::us(1)) == SimTime::ns(65));
    CHECK(e.pending() == 1);
    CHECK(e.next_event_time() == SimTime::us(2));
    CHECK(e.run() == SimTime::us(2));
}

TEST_CASE("events may schedule more events; the past is rejected") {
    Engine e;
    int n = 0;
    std::function<void()> tick = [&] {
        if (++n < 5) e.schedule_in(SimTime::ns(10), tick);
    };
    e.schedule(SimTime{}, tick);
    e.run();
    CHECK(n == 5);
    CHECK(e.now() == SimTime::ns(40));
    CHECK_THROWS_AS(e.schedule(SimTime::ns(1), [] {}), SimError);
}

TEST_CASE("splitmix reference value") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xe220a8397b1dcdafULL);
}

TEST_CASE("streams are deterministic and independent") {
    RngStream a(42, 0), b(42, 0), c(42, 1);
    std::vector<std::uint64_t> va, vb, vc;
    for (int i = 0; i < 10; ++i) {
        va.push_back(a.next_u64());
        vb.push_back(b.next_u64());
        vc.push_back(c.next_u64());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("exponential samples") {
    RngStream r(7, 0);
    const int n = 20000;
    double sum = 0;
    bool positive = true;
    for (int i = 0; i < n; ++i) {
        const SimTime s = r.exp_sample(2e6);
        positive = positive && s > SimTime{};
        sum += s.to_ns();
    }
    CHECK(positive);
    CHECK(sum / n == doctest::Approx(500.0).epsilon(0.02));
    CHECK_THROWS_AS(r.exp_sample(0), ConfigError);
}

TEST_CASE("uniform draws stay in range") {
    RngStream r(3, 9);
    std::vector<int> hist(4, 0);
    for (int i = 0; i < 40000; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        ++hist[r.uniform_int(4)];
    }
    for (int h : hist) CHECK(h == doctest::Approx(10000).epsilon(0.03));
    CHECK_THROWS(r.uniform_int(0));
}

TEST_CASE("csv writer") {
    CsvWriter w({"a", "b"});
    w.add_row({"1", "x"});
    CHECK(w.str() == "a,b\n1,x\n");
    CHECK_THROWS(w.add_row({"only"}));
    CHECK(fmt_fixed(1.23456, 3) == "1.235");
    CHECK(fmt_fixed(2e6, 1) == "2000000.0");
}
