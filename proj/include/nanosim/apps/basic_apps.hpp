#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nanosim/core/app.hpp"
#include "nanosim/sim/rng.hpp"

namespace nanosim {

/// Payload helpers: little-endian 64-bit words.
std::uint64_t read_word(const std::vector<std::uint8_t>& buf, std::size_t word);
void write_word(std::vector<std::uint8_t>& buf, std::size_t word, std::uint64_t v);
std::vector<std::uint8_t> words_to_bytes(const std::vector<std::uint64_t>& words);
std::vector<std::uint64_t> bytes_to_words(const std::vector<std::uint8_t>& buf);

/// Reply to the sender of `req` from the port it arrived on, carrying `payload`.
Message reply_to(const Message& req, std::vector<std::uint8_t> payload);

/// Echoes every message back to its sender with each 8B word incremented.
/// Trailing bytes that do not fill a word are echoed unchanged.
class LoopbackApp : public App {
public:
    explicit LoopbackApp(SimTime service = {}, bool increment = true) : service_(service), increment_(increment) {}
    std::string name() const override { return "loopback"; }
    SimTime service_time(const Message&, const AppContext&) override { return service_; }
    std::vector<Message> on_complete(Message msg, const AppContext& ctx) override;

private:
    SimTime service_;
    bool increment_;
};

/// Constant service time, fixed-size reply.
class FixedServiceApp : public App {
public:
    explicit FixedServiceApp(SimTime service, std::uint32_t reply_bytes = 8)
        : service_(service), reply_bytes_(reply_bytes) {}
    std::string name() const override { return "fixed"; }
    SimTime service_time(const Message&, const AppContext&) override { return service_; }
    std::vector<Message> on_complete(Message msg, const AppContext& ctx) override;

private:
    SimTime service_;
    std::uint32_t reply_bytes_;
};

/// Cost model for apps that move message words through the register
/// interface: cycles = words * cycles_per_word + cycles_per_msg.
struct WordCost {
    std::uint32_t cycles_per_word = 1;
    std::uint32_t cycles_per_msg = 6;

    std::uint64_t cycles(std::uint32_t bytes) const;
    SimTime time(std::uint32_t bytes) const { return SimTime::cycles(cycles(bytes)); }
    /// Sustained payload rate for back-to-back messages of `bytes`.
    double gbps(std::uint32_t bytes) const;
};

/// Receive loop: reads every word of each message, sends nothing.
class RxSinkApp : public App {
public:
    explicit RxSinkApp(WordCost cost) : cost_(cost) {}
    std::string name() const override { return "rx_sink"; }
    SimTime service_time(const Message& msg, const AppContext&) override { return cost_.time(msg.length()); }
    std::vector<Message> on_complete(Message, const AppContext&) override { return {}; }

private:
    WordCost cost_;
};

/// Transmit loop: every trigger message makes the thread write one
/// `tx_bytes` message to (dst, dst_port); the cost covers those words.
class TxStreamApp : public App {
public:
    TxStreamApp(WordCost cost, std::uint32_t tx_bytes, HostId dst, Port dst_port)
        : cost_(cost), tx_bytes_(tx_bytes), dst_(dst), dst_port_(dst_port) {}
    std::string name() const override { return "tx_stream"; }
    SimTime service_time(const Message&, const AppContext&) override { return cost_.time(tx_bytes_); }
    std::vector<Message> on_complete(Message msg, const AppContext& ctx) override;

private:
    WordCost cost_;
    std::uint32_t tx_bytes_;
    HostId dst_;
    Port dst_port_;
};

/// Two request classes: short (class 0) and long (class 1).
///
/// In Sample mode the class is drawn per message from the app's own stream
/// with probability p_long. In ByClass mode the class the load generator
/// stamped on the request decides.
class BimodalApp : public App {
public:
    enum class Mode { Sample, ByClass };
    struct Config {
        SimTime short_service = SimTime::ns(500);
        SimTime long_service = SimTime::us(5);
        double p_long = 0.005;
        Mode mode = Mode::ByClass;
        std::uint32_t reply_bytes = 8;
    };
    BimodalApp(Config cfg, RngStream rng) : cfg_(cfg), rng_(rng) {}
    std::string name() const override { return "bimodal"; }
    SimTime service_time(const Message& msg, const AppContext& ctx) override;
    std::vector<Message> on_complete(Message msg, const AppContext& ctx) override;
    std::uint64_t long_count() const { return long_; }
    std::uint64_t total() const { return total_; }

private:
    Config cfg_;
    RngStream rng_;
    std::uint64_t long_ = 0;
    std::uint64_t total_ = 0;
};

/// Normally `normal_service`; request i (1-based) with i % period == phase,
/// and with `p_long` > 0 each request with that probability, takes
/// `long_service` instead. Phase 0 makes every `period`-th request long.
class MisbehavingApp : public App {
public:
    struct Config {
        SimTime normal_service = SimTime::ns(500);
        SimTime long_service = SimTime::us(5);
        std::uint32_t period = 100;
        double p_long = 0.0;
        std::uint32_t reply_bytes = 8;
        std::uint32_t phase = 0;
    };
    MisbehavingApp(Config cfg, RngStream rng) : cfg_(cfg), rng_(rng) {}
    std::string name() const override { return "misbehaving"; }
    SimTime service_time(const Message& msg, const AppContext& ctx) override;
    std::vector<Message> on_complete(Message msg, const AppContext& ctx) override;
    std::uint64_t long_count() const { return long_; }

private:
    Config cfg_;
    RngStream rng_;
    std::uint64_t seen_ = 0;
    std::uint64_t long_ = 0;
};

}  // namespace nanosim
