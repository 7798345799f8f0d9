#include <vector>

#include "doctest.h"
#include "nanosim/net/network.hpp"

using namespace nanosim;

namespace {

struct Sink : PacketReceiver {
    Engine* engine = nullptr;
    std::vector<std::pair<SimTime, Packet>> got;
    void receive_packet(Packet&& p) override { got.emplace_back(engine->now(), std::move(p)); }
};

Packet data_pkt(HostId dst, std::uint32_t payload, std::uint32_t idx = 0) {
    Packet p;
    p.kind = PacketKind::Data;
    p.payload_bytes = payload;
    p.wire_bytes = frame_bytes(payload);
    p.msg.src_host = 9;
    p.msg.dst_host = dst;
    p.pkt_index = idx;
    return p;
}

}  // namespace

TEST_CASE("serialization at 200 Gb/s") {
    constexpr std::uint64_t rate = 200'000'000'000ULL;
    CHECK(serialization_time(frame_bytes(1024), rate) == SimTime::ps(43520));
    CHECK(serialization_time(frame_bytes(8), rate) == SimTime::ps(2880));
    // 1 byte = 40 ps exactly; 100 Gb/s: 1 byte = 80 ps
    CHECK(serialization_time(1, rate) == SimTime::ps(40));
    CHECK(serialization_time(1, 100'000'000'000ULL) == SimTime::ps(80));
    // 3 bytes at 7 bps rounds up
    CHECK(serialization_time(1, 3'000'000'000'000ULL).picos() == 3);
}

TEST_CASE("link delivers in order after ser + propagation") {
    Engine e;
    Sink s;
    s.engine = &e;
    Link l(e, LinkConfig{}, "l");
    l.connect(s);
    CHECK(l.transmit(data_pkt(1, 1024, 0)) == SimTime{});
    CHECK(l.transmit(data_pkt(1, 1024, 1)) == SimTime::ps(43520));
    e.run();
    REQUIRE(s.got.size() == 2);
    CHECK(s.got[0].first == SimTime::ps(43520 + 43000));
    CHECK(s.got[1].first == SimTime::ps(2 * 43520 + 43000));
    CHECK(s.got[1].second.pkt_index == 1);
    CHECK(l.packets_sent() == 2);
    CHECK(l.bytes_sent() == 2 * 1088);
}

TEST_CASE("port trims beyond capacity and keeps control first") {
    SwitchPort port(SwitchPortConfig{2, 0, true});
    CHECK(port.enqueue(data_pkt(1, 1024, 0), SimTime{}) == EnqueueResult::Enqueued);
    CHECK(port.enqueue(data_pkt(1, 1024, 1), SimTime{}) == EnqueueResult::Enqueued);
    CHECK(port.enqueue(data_pkt(1, 1024, 2), SimTime{}) == EnqueueResult::Trimmed);
    CHECK(port.occupancy_pkts() == 2);
    CHECK(port.control_depth() == 1);
    auto first = port.dequeue(SimTime::ns(1));
    REQUIRE(first);
    CHECK(first->kind == PacketKind::Trim);
    CHECK(first->wire_bytes == kHeaderBytes);
    CHECK(first->pkt_index == 2);
    CHECK(port.dequeue(SimTime::ns(2))->pkt_index == 0);
    CHECK(port.occupancy_pkts() == 1);
}

TEST_CASE("byte capacity and drop-tail") {
    SwitchPort port(SwitchPortConfig{0, 2000, false});
    port.enable_trace(true);
    CHECK(port.enqueue(data_pkt(1, 1024), SimTime{}) == EnqueueResult::Enqueued);
    CHECK(port.enqueue(data_pkt(1, 1024), SimTime{}) == EnqueueResult::Dropped);
    CHECK(port.enqueue(data_pkt(1, 800), SimTime{}) == EnqueueResult::Enqueued);
    CHECK(port.occupancy_bytes() == 1088 + 864);
    CHECK(port.dropped == 1);
    REQUIRE(port.trace().size() == 3);
    CHECK(port.trace()[1].action == QueueAction::Drop);
    CHECK(std::string(to_string(QueueAction::Trim)) == "TRIM");
}

TEST_CASE("a packet in service still holds its buffer") {
    SwitchPort port(SwitchPortConfig{1, 0, true});
    port.enqueue(data_pkt(1, 100), SimTime{});
    auto p = port.begin_service();
    REQUIRE(p);
    CHECK(port.enqueue(data_pkt(1, 100), SimTime{}) == EnqueueResult::Trimmed);
    port.end_service(SimTime::ns(1));
    CHECK(port.occupancy_pkts() == 0);
    CHECK(port.enqueue(data_pkt(1, 100), SimTime::ns(1)) == EnqueueResult::Enqueued);
}

TEST_CASE("80 simultaneous packets into a 74 packet port") {
    Engine e;
    Network net(e);
    Switch& sw = net.add_switch("tor");
    Sink host;
    host.engine = &e;
    net.attach_host(0, host, sw, LinkConfig{}, SwitchPortConfig{74, 0, true});
    sw.port(0).enable_trace(true);
    for (std::uint32_t i = 0; i < 80; ++i) sw.receive_packet(data_pkt(0, 1024, i));
    CHECK(sw.port(0).enqueued == 74);
    CHECK(sw.port(0).trimmed == 6);
    CHECK(sw.port(0).peak_pkts == 74);
    e.run();
    REQUIRE(host.got.size() == 80);
    // packet 0 was already on the wire; the trimmed headers overtake the rest
    CHECK(host.got[0].second.kind == PacketKind::Data);
    for (std::size_t i = 1; i <= 6; ++i) CHECK(host.got[i].second.kind == PacketKind::Trim);
    CHECK(host.got[7].second.pkt_index == 1);

    SwitchPort drop_port(SwitchPortConfig{74, 0, false});
    for (std::uint32_t i = 0; i < 80; ++i) drop_port.enqueue(data_pkt(0, 1024, i), SimTime{});
    CHECK(drop_port.enqueued == 74);
    CHECK(drop_port.dropped == 6);
}

TEST_CASE("control packets route back to the sender") {
    Packet d = data_pkt(3, 10);
    CHECK(d.destination() == 3);
    Packet a = make_control(PacketKind::Ack, d.msg, 0, 1);
    CHECK(a.destination() == 9);
    CHECK(a.priority_class() == PriorityClass::Control);
    CHECK(a.wire_bytes == 64);
}

TEST_CASE("network validation catches missing routes") {
    Engine e;
    Network net(e);
    Switch& a = net.add_switch("a");
    Switch& b = net.add_switch("b");
    Sink h0, h1;
    net.attach_host(0, h0, a, LinkConfig{}, SwitchPortConfig::unlimited());
    net.attach_host(1, h1, b, LinkConfig{}, SwitchPortConfig::unlimited());
    CHECK_THROWS_AS(net.validate(), ConfigError);
    auto [pa, pb] = net.connect_switches(a, b, LinkConfig{}, SwitchPortConfig::unlimited());
    a.set_route(1, pa);
    b.set_route(0, pb);
    CHECK_NOTHROW(net.validate());
}
