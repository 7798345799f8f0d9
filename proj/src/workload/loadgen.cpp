#include "nanosim/workload/loadgen.hpp"

#include <algorithm>

namespace nanosim {

LoadGenerator::LoadGenerator(Engine& engine, Host& client, LoadGenConfig cfg, RequestFactory factory)
    : engine_(engine),
      client_(client),
      cfg_(cfg),
      factory_(std::move(factory)),
      arrivals_(cfg.seed, cfg.arrival_stream),
      choices_(cfg.seed, cfg.choice_stream) {
    if (!(cfg_.rate_rps > 0.0)) throw ConfigError("load generator: rate_rps must be positive");
    if (cfg_.arrival_stream == cfg_.choice_stream) {
        throw ConfigError("load generator: arrival and choice streams must differ");
    }
    if (cfg_.warmup_discard > cfg_.num_requests) {
        throw ConfigError("load generator: warmup_discard exceeds num_requests");
    }
    client_.set_sink([this](Message&& m) { on_response(std::move(m)); });
}

LoadGenerator::~LoadGenerator() { client_.set_sink({}); }

void LoadGenerator::start() {
    if (cfg_.num_requests == 0) return;
    const SimTime first = std::max(cfg_.start, engine_.now()) + arrivals_.exp_sample(cfg_.rate_rps);
    engine_.schedule(first, [this] { issue(); });
}

void LoadGenerator::issue() {
    const std::uint64_t id = issued_++;
    const SimTime now = engine_.now();
    send_times_.push_back(now);
    RequestSpec spec = factory_(id, choices_);
    outstanding_[id] = Pending{now, spec.priority, spec.klass};
    if (cfg_.client_compute == SimTime{}) {
        transmit(id, std::move(spec));
    } else {
        engine_.schedule_in(cfg_.client_compute, [this, id, s = std::move(spec)]() mutable { transmit(id, std::move(s)); });
    }
    if (issued_ < cfg_.num_requests) {
        engine_.schedule_in(arrivals_.exp_sample(cfg_.rate_rps), [this] { issue(); });
    }
}

void LoadGenerator::transmit(std::uint64_t id, RequestSpec spec) {
    const auto& p = outstanding_.at(id);
    RpcMeta meta{id, spec.klass, spec.priority, p.send};
    Message m = make_message(cfg_.client_port, spec.dst, spec.port, std::move(spec.payload), meta);
    if (client_.send(std::move(m)) == TxStatus::NoBuffer) {
        ++rejected_;
        rejected_kinds_.emplace_back(p.priority, p.klass);
        outstanding_.erase(id);
    }
}

void LoadGenerator::on_response(Message&& msg) {
    auto it = outstanding_.find(msg.meta.rpc_id);
    if (it == outstanding_.end()) return;
    const SimTime now = engine_.now();
    samples_.push_back(LatencySample{msg.meta.rpc_id, it->second.priority, it->second.klass, it->second.send, now});
    outstanding_.erase(it);
    ++completed_;
    last_completion_ = now;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> LoadGenerator::unanswered() const {
    auto out = rejected_kinds_;
    for (const auto& [id, p] : outstanding_) out.emplace_back(p.priority, p.klass);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LatencySample> LoadGenerator::samples() const {
    std::vector<LatencySample> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) {
        if (s.request_id >= cfg_.warmup_discard) out.push_back(s);
    }
    return out;
}

}  // namespace nanosim
