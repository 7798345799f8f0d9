#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nanosim/sim/engine.hpp"
#include "nanosim/transport/app_header.hpp"
#include "nanosim/transport/msg_buffer.hpp"
#include "nanosim/transport/pull_pacer.hpp"

namespace nanosim {

enum class TransportMode { Ndp, Timeout };

struct TransportConfig {
    TransportMode mode = TransportMode::Ndp;
    std::uint32_t mtu_payload = 1024;
    /// Packets a sender may emit before it needs PULLs. 0 = one
    /// bandwidth-delay product at line_rate_bps over rtt_estimate.
    std::uint32_t initial_window_pkts = 0;
    std::uint64_t line_rate_bps = 200'000'000'000ULL;
    SimTime rtt_estimate = SimTime::us(3);
    /// PULL spacing. Zero means one max-size frame at line_rate_bps.
    SimTime pull_interval{};
    /// Retransmission timeout (Timeout mode only).
    SimTime rto = SimTime::us(12);
    std::uint32_t max_retransmissions = 16;
    std::vector<SizeClass> tx_classes = MsgBufferPool::default_classes();
    std::vector<SizeClass> rx_classes = MsgBufferPool::default_classes();

    std::uint32_t window_packets() const;
    SimTime pacing_interval() const;
};

enum class TxStatus { Accepted, NoBuffer };

struct TransportStats {
    std::uint64_t msgs_sent = 0;
    std::uint64_t msgs_acked = 0;
    std::uint64_t msgs_failed = 0;
    std::uint64_t msgs_delivered = 0;
    std::uint64_t tx_rejected = 0;
    std::uint64_t data_sent = 0;
    std::uint64_t retransmissions = 0;
    std::uint64_t rto_fires = 0;
    std::uint64_t acks_sent = 0;
    std::uint64_t nacks_sent = 0;
    std::uint64_t pulls_sent = 0;
    std::uint64_t trims_received = 0;
    std::uint64_t duplicates = 0;
    std::uint64_t rx_dropped_no_buffer = 0;
};

/// Hardware-terminated message transport for one host: packetization and
/// retransmission, bitmap reassembly, NDP receiver logic (ACK/NACK plus paced
/// PULLs) and a timeout-only baseline.
class Transport {
public:
    using Emit = std::function<void(Packet&&)>;
    using Deliver = std::function<void(Message&&)>;

    Transport(Engine& engine, HostId self, TransportConfig cfg, Emit emit, Deliver deliver);
    Transport(const Transport&) = delete;
    Transport& operator=(const Transport&) = delete;

    /// Splits the message into DATA packets and sends the initial window.
    /// Throws std::invalid_argument if it exceeds the largest buffer class.
    TxStatus tx_message(Message msg);

    void rx_packet(Packet&& pkt);

    HostId self() const { return self_; }
    const TransportConfig& config() const { return cfg_; }
    const TransportStats& stats() const { return stats_; }
    const MsgBufferPool& tx_pool() const { return tx_pool_; }
    const MsgBufferPool& rx_pool() const { return rx_pool_; }
    const PullPacer& pacer() const { return pacer_; }
    std::size_t outstanding_tx() const { return tx_.size(); }
    std::size_t outstanding_rx() const { return rx_.size(); }

    /// Packet count for a message of `len` bytes.
    std::uint32_t packets_for(std::uint32_t len) const;

private:
    struct TxState {
        MsgId id;
        std::uint32_t msg_len = 0;
        std::uint32_t total = 0;
        std::vector<bool> acked;
        std::vector<bool> retx_queued;
        std::uint32_t acked_count = 0;
        std::uint32_t next_unsent = 0;
        std::deque<std::uint32_t> retx;
        BufferHandle buffer;
        RpcMeta meta;
        EventHandle rto_event;
        std::uint32_t rto_rounds = 0;
    };
    struct RxState {
        std::uint32_t msg_len = 0;
        std::uint32_t total = 0;
        std::vector<bool> received;
        std::uint32_t received_count = 0;
        std::optional<BufferHandle> buffer;
        SimTime first_pkt_ts{};
        RpcMeta meta;
        std::uint32_t new_data_pulls = 0;
    };

    void send_data(TxState& st, std::uint32_t idx, bool retransmit);
    void send_control(PacketKind kind, const MsgId& id, std::uint32_t idx, std::uint32_t total);
    void schedule_pull(const MsgId& id, std::uint32_t idx, std::uint32_t total);
    void arm_rto(TxState& st);
    void on_rto(const MsgId& id);
    void retire_tx(const MsgId& id, bool success);

    void on_data(Packet&& pkt);
    void on_trim(const Packet& pkt);
    void on_ack(const Packet& pkt);
    void on_nack(const Packet& pkt);
    void on_pull(const Packet& pkt);

    Engine& engine_;
    HostId self_;
    TransportConfig cfg_;
    Emit emit_;
    Deliver deliver_;
    MsgBufferPool tx_pool_;
    MsgBufferPool rx_pool_;
    PullPacer pacer_;
    std::uint32_t window_;
    TransportStats stats_;

    std::unordered_map<MsgId, TxState, MsgIdHash> tx_;
    std::unordered_map<MsgId, RxState, MsgIdHash> rx_;
    std::unordered_set<MsgId, MsgIdHash> completed_;
    std::map<std::tuple<HostId, Port, Port>, std::uint32_t> next_seq_;
};

}  // namespace nanosim
