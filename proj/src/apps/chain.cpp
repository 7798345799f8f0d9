#include "nanosim/apps/chain.hpp"

#include <stdexcept>

#include "nanosim/apps/basic_apps.hpp"

namespace nanosim {

std::vector<std::uint8_t> chain_encode(const ChainRequest& req, std::uint32_t key_bytes) {
    if (req.replicas.empty() || req.replicas.size() > 3) {
        throw std::invalid_argument("chain: between one and three replicas");
    }
    auto fits16 = [](HostId h) {
        if (h > 0xFFFF) throw std::invalid_argument("chain: host ids are limited to 16 bits");
        return static_cast<std::uint64_t>(h);
    };
    std::vector<std::uint8_t> out(16 + key_bytes, 0);
    const std::uint64_t w0 = static_cast<std::uint64_t>(req.op) | static_cast<std::uint64_t>(req.hop) << 8 |
                             static_cast<std::uint64_t>(req.replicas.size()) << 16 |
                             static_cast<std::uint64_t>(req.client_port) << 32;
    std::uint64_t w1 = fits16(req.client);
    for (std::size_t i = 0; i < req.replicas.size(); ++i) w1 |= fits16(req.replicas[i]) << (16 * (i + 1));
    write_word(out, 0, w0);
    write_word(out, 1, w1);
    write_word(out, 2, req.key);
    out.resize(16 + key_bytes, 0);
    out.insert(out.end(), req.value.begin(), req.value.end());
    return out;
}

ChainRequest chain_decode(const std::vector<std::uint8_t>& payload, std::uint32_t key_bytes) {
    if (payload.size() < 16 + key_bytes) throw std::invalid_argument("chain: request shorter than header + key");
    ChainRequest r;
    const std::uint64_t w0 = read_word(payload, 0);
    const std::uint64_t w1 = read_word(payload, 1);
    r.op = static_cast<KvOp>(w0 & 0xFF);
    r.hop = static_cast<std::uint8_t>((w0 >> 8) & 0xFF);
    const std::size_t n = (w0 >> 16) & 0xFF;
    r.client_port = static_cast<Port>((w0 >> 32) & 0xFFFF);
    r.client = static_cast<HostId>(w1 & 0xFFFF);
    for (std::size_t i = 0; i < n && i < 3; ++i) r.replicas.push_back(static_cast<HostId>((w1 >> (16 * (i + 1))) & 0xFFFF));
    r.key = read_word(payload, 2);
    r.value.assign(payload.begin() + 16 + key_bytes, payload.end());
    return r;
}

SimTime ChainReplicaApp::service_time(const Message& msg, const AppContext&) {
    const auto op = static_cast<KvOp>(read_word(msg.payload, 0) & 0xFF);
    return op == KvOp::Write ? cfg_.write_service : cfg_.read_service;
}

std::vector<Message> ChainReplicaApp::on_complete(Message msg, const AppContext&) {
    auto req = chain_decode(msg.payload, cfg_.key_bytes);
    if (req.op == KvOp::Read) {
        ++reads_;
        return {make_message(msg.local_port, req.client, req.client_port, store_.read(req.key), msg.meta)};
    }
    ++writes_;
    store_.write(req.key, req.value);
    if (static_cast<std::size_t>(req.hop) + 1 < req.replicas.size()) {
        ++forwarded_;
        const HostId next = req.replicas[req.hop + 1];
        ++req.hop;
        return {make_message(msg.local_port, next, msg.local_port, chain_encode(req, cfg_.key_bytes), msg.meta)};
    }
    KvRequest ack{KvOp::Ack, req.key, {}};
    return {make_message(msg.local_port, req.client, req.client_port, kv_encode(ack, cfg_.key_bytes), msg.meta)};
}

}  // namespace nanosim
