#pragma once

#include <cstdint>
#include <vector>

#include "nanosim/apps/kv_store.hpp"

namespace nanosim {

/// Chain replication request. Word 0 packs op | hop << 8 | replica count
/// << 16 | client port << 32; word 1 packs the client and up to three
/// replica host ids, 16 bits each. Key and value follow as in KvRequest.
struct ChainRequest {
    KvOp op = KvOp::Write;
    std::uint8_t hop = 0;
    HostId client = 0;
    Port client_port = 0;
    std::vector<HostId> replicas;
    std::uint64_t key = 0;
    std::vector<std::uint8_t> value;
};

std::vector<std::uint8_t> chain_encode(const ChainRequest& req, std::uint32_t key_bytes);
ChainRequest chain_decode(const std::vector<std::uint8_t>& payload, std::uint32_t key_bytes);

struct ChainReplicaConfig {
    std::uint32_t key_bytes = 16;
    SimTime write_service = SimTime::ps(128'520);
    SimTime read_service = SimTime::ps(128'520);
};

/// One replica. A WRITE is applied locally and forwarded to the next replica
/// named in the request; the tail acks the client. A READ is answered by
/// whichever replica receives it (clients send reads to the tail).
class ChainReplicaApp : public App {
public:
    ChainReplicaApp(KvStore& store, ChainReplicaConfig cfg) : store_(store), cfg_(cfg) {}
    std::string name() const override { return "chain_replica"; }
    SimTime service_time(const Message& msg, const AppContext& ctx) override;
    std::vector<Message> on_complete(Message msg, const AppContext& ctx) override;

    std::uint64_t writes_applied() const { return writes_; }
    std::uint64_t forwarded() const { return forwarded_; }
    std::uint64_t reads() const { return reads_; }

private:
    KvStore& store_;
    ChainReplicaConfig cfg_;
    std::uint64_t writes_ = 0;
    std::uint64_t forwarded_ = 0;
    std::uint64_t reads_ = 0;
};

}  // namespace nanosim
