#include "nanosim/apps/basic_apps.hpp"

#include <stdexcept>

namespace nanosim {

std::uint64_t read_word(const std::vector<std::uint8_t>& buf, std::size_t word) {
    if ((word + 1) * 8 > buf.size()) throw std::out_of_range("read_word past end of payload");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf[word * 8 + static_cast<std::size_t>(i)];
    return v;
}

void write_word(std::vector<std::uint8_t>& buf, std::size_t word, std::uint64_t v) {
    if ((word + 1) * 8 > buf.size()) buf.resize((word + 1) * 8, 0);
    for (std::size_t i = 0; i < 8; ++i) buf[word * 8 + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::vector<std::uint8_t> words_to_bytes(const std::vector<std::uint64_t>& words) {
    std::vector<std::uint8_t> out(words.size() * 8);
    for (std::size_t i = 0; i < words.size(); ++i) write_word(out, i, words[i]);
    return out;
}

std::vector<std::uint64_t> bytes_to_words(const std::vector<std::uint8_t>& buf) {
    std::vector<std::uint64_t> out(buf.size() / 8);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = read_word(buf, i);
    return out;
}

Message reply_to(const Message& req, std::vector<std::uint8_t> payload) {
    return make_message(req.local_port, req.header.peer_ip, req.header.peer_port, std::move(payload), req.meta);
}

std::vector<Message> LoopbackApp::on_complete(Message msg, const AppContext&) {
    auto payload = msg.payload;
    if (increment_) {
        for (std::size_t w = 0; w < payload.size() / 8; ++w) write_word(payload, w, read_word(payload, w) + 1);
    }
    return {reply_to(msg, std::move(payload))};
}

std::vector<Message> FixedServiceApp::on_complete(Message msg, const AppContext&) {
    return {reply_to(msg, std::vector<std::uint8_t>(reply_bytes_, 0))};
}

std::uint64_t WordCost::cycles(std::uint32_t bytes) const {
    const std::uint64_t words = (static_cast<std::uint64_t>(bytes) + 7) / 8;
    return words * cycles_per_word + cycles_per_msg;
}

double WordCost::gbps(std::uint32_t bytes) const {
    return static_cast<double>(bytes) * 8.0 / static_cast<double>(time(bytes).picos()) * 1000.0;
}

std::vector<Message> TxStreamApp::on_complete(Message msg, const AppContext&) {
    return {make_message(msg.local_port, dst_, dst_port_, std::vector<std::uint8_t>(tx_bytes_, 0xA5), msg.meta)};
}

SimTime BimodalApp::service_time(const Message& msg, const AppContext&) {
    bool is_long = false;
    if (cfg_.mode == Mode::Sample) {
        is_long = rng_.bernoulli(cfg_.p_long);
    } else {
        is_long = msg.meta.klass == 1;
    }
    ++total_;
    if (is_long) ++long_;
    return is_long ? cfg_.long_service : cfg_.short_service;
}

std::vector<Message> BimodalApp::on_complete(Message msg, const AppContext&) {
    return {reply_to(msg, std::vector<std::uint8_t>(cfg_.reply_bytes, 0))};
}

SimTime MisbehavingApp::service_time(const Message&, const AppContext&) {
    ++seen_;
    bool is_long = cfg_.period != 0 && seen_ % cfg_.period == cfg_.phase % cfg_.period;
    if (cfg_.p_long > 0.0 && rng_.bernoulli(cfg_.p_long)) is_long = true;
    if (is_long) ++long_;
    return is_long ? cfg_.long_service : cfg_.normal_service;
}

std::vector<Message> MisbehavingApp::on_complete(Message msg, const AppContext&) {
    return {reply_to(msg, std::vector<std::uint8_t>(cfg_.reply_bytes, 0))};
}

}  // namespace nanosim
