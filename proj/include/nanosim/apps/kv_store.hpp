#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nanosim/core/app.hpp"

namespace nanosim {

enum class KvOp : std::uint8_t { Read = 0, Write = 1, Ack = 2 };
enum class KvPolicy { Jbsq, Static };

const char* to_string(KvPolicy p);

/// Key-value contents. Untouched keys hold a deterministic pattern derived
/// from the key, so no memory is spent until a key is written.
class KvStore {
public:
    KvStore(std::uint32_t num_keys, std::uint32_t value_bytes);
    std::vector<std::uint8_t> read(std::uint64_t key) const;
    void write(std::uint64_t key, std::vector<std::uint8_t> value);
    std::uint32_t num_keys() const { return num_keys_; }
    std::uint32_t value_bytes() const { return value_bytes_; }
    static std::vector<std::uint8_t> initial_value(std::uint64_t key, std::uint32_t value_bytes);

private:
    std::uint32_t num_keys_;
    std::uint32_t value_bytes_;
    std::unordered_map<std::uint64_t, std::vector<std::uint8_t>> written_;
};

/// Request layout: word 0 = op, then a key of key_bytes (the key id is its
/// first 8 bytes), then the value for writes.
struct KvRequest {
    KvOp op = KvOp::Read;
    std::uint64_t key = 0;
    std::vector<std::uint8_t> value;
};

std::vector<std::uint8_t> kv_encode(const KvRequest& req, std::uint32_t key_bytes);
KvRequest kv_decode(const std::vector<std::uint8_t>& payload, std::uint32_t key_bytes);

struct KvConfig {
    std::uint32_t num_cores = 4;
    std::uint32_t keys_per_core = 10000;
    std::uint32_t key_bytes = 16;
    std::uint32_t value_bytes = 512;
    SimTime read_service = SimTime::ns(414);
    SimTime write_service = SimTime::ns(414);
    KvPolicy policy = KvPolicy::Jbsq;

    std::uint32_t num_keys() const { return num_cores * keys_per_core; }
    /// Core that owns `key` under static assignment.
    std::size_t owner(std::uint64_t key) const { return static_cast<std::size_t>(key / keys_per_core); }
};

/// MICA-style server thread: reads return the value, writes return an 8B ack.
/// Under static assignment a request served by a core other than the key's
/// owner is counted as a violation.
class KvServerApp : public App {
public:
    KvServerApp(KvStore& store, KvConfig cfg) : store_(store), cfg_(cfg) {}
    std::string name() const override { return "kv"; }
    SimTime service_time(const Message& msg, const AppContext& ctx) override;
    std::vector<Message> on_complete(Message msg, const AppContext& ctx) override;

    std::uint64_t reads() const { return reads_; }
    std::uint64_t writes() const { return writes_; }
    std::uint64_t violations() const { return violations_; }

private:
    KvStore& store_;
    KvConfig cfg_;
    std::uint64_t reads_ = 0;
    std::uint64_t writes_ = 0;
    std::uint64_t violations_ = 0;
};

}  // namespace nanosim
