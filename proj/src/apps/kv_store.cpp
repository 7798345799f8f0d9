#include "nanosim/apps/kv_store.hpp"

#include <stdexcept>

#include "nanosim/apps/basic_apps.hpp"
#include "nanosim/sim/rng.hpp"

namespace nanosim {

const char* to_string(KvPolicy p) { return p == KvPolicy::Jbsq ? "jbsq" : "static"; }

KvStore::KvStore(std::uint32_t num_keys, std::uint32_t value_bytes) : num_keys_(num_keys), value_bytes_(value_bytes) {}

std::vector<std::uint8_t> KvStore::initial_value(std::uint64_t key, std::uint32_t value_bytes) {
    std::vector<std::uint8_t> v(value_bytes);
    std::uint64_t x = mix64(key + 1);
    for (std::uint32_t i = 0; i < value_bytes; ++i) {
        if (i % 8 == 0 && i != 0) x = mix64(x);
        v[i] = static_cast<std::uint8_t>(x >> (8 * (i % 8)));
    }
    return v;
}

std::vector<std::uint8_t> KvStore::read(std::uint64_t key) const {
    if (key >= num_keys_) throw std::out_of_range("kv: key " + std::to_string(key) + " outside keyspace");
    auto it = written_.find(key);
    return it != written_.end() ? it->second : initial_value(key, value_bytes_);
}

void KvStore::write(std::uint64_t key, std::vector<std::uint8_t> value) {
    if (key >= num_keys_) throw std::out_of_range("kv: key " + std::to_string(key) + " outside keyspace");
    value.resize(value_bytes_, 0);
    written_[key] = std::move(value);
}

std::vector<std::uint8_t> kv_encode(const KvRequest& req, std::uint32_t key_bytes) {
    if (key_bytes < 8) throw std::invalid_argument("kv: keys must be at least 8 bytes");
    std::vector<std::uint8_t> out(8 + key_bytes, 0);
    write_word(out, 0, static_cast<std::uint64_t>(req.op));
    write_word(out, 1, req.key);
    out.resize(8 + key_bytes, 0);
    out.insert(out.end(), req.value.begin(), req.value.end());
    return out;
}

KvRequest kv_decode(const std::vector<std::uint8_t>& payload, std::uint32_t key_bytes) {
    if (payload.size() < 8 + key_bytes) throw std::invalid_argument("kv: request shorter than op + key");
    KvRequest r;
    r.op = static_cast<KvOp>(read_word(payload, 0) & 0xFF);
    r.key = read_word(payload, 1);
    r.value.assign(payload.begin() + 8 + key_bytes, payload.end());
    return r;
}

SimTime KvServerApp::service_time(const Message& msg, const AppContext&) {
    const auto req = kv_decode(msg.payload, cfg_.key_bytes);
    return req.op == KvOp::Write ? cfg_.write_service : cfg_.read_service;
}

std::vector<Message> KvServerApp::on_complete(Message msg, const AppContext& ctx) {
    auto req = kv_decode(msg.payload, cfg_.key_bytes);
    if (cfg_.policy == KvPolicy::Static && cfg_.owner(req.key) != ctx.core) ++violations_;
    if (req.op == KvOp::Write) {
        ++writes_;
        store_.write(req.key, std::move(req.value));
        std::vector<std::uint8_t> ack(8, 0);
        write_word(ack, 0, static_cast<std::uint64_t>(KvOp::Ack));
        return {reply_to(msg, std::move(ack))};
    }
    ++reads_;
    return {reply_to(msg, store_.read(req.key))};
}

}  // namespace nanosim
