#include "nanosim/nic/selector.hpp"

#include <string>

#include "nanosim/sim/engine.hpp"

namespace nanosim {

CoreSelector::CoreSelector(std::size_t num_cores, SelectorConfig cfg) : num_cores_(num_cores), cfg_(std::move(cfg)) {
    if (num_cores_ > 64) throw ConfigError("selector: at most 64 cores per host");
    if (cfg_.n == 0) throw ConfigError("selector: JBSQ bound n must be at least 1");
    for (const auto& [port, core] : cfg_.rss_map) {
        if (core >= num_cores_) {
            throw ConfigError("selector: rss_map sends port " + std::to_string(port) + " to missing core " +
                              std::to_string(core));
        }
    }
}

void CoreSelector::bind(Port port, std::size_t core) {
    if (core >= num_cores_) throw ConfigError("selector: bind to missing core " + std::to_string(core));
    auto& st = ports_[port];
    if (st.counts.empty()) st.counts.assign(num_cores_, 0);
    st.bitmap |= (1ULL << core);
}

const CoreSelector::PortState* CoreSelector::find(Port port) const {
    auto it = ports_.find(port);
    return it == ports_.end() ? nullptr : &it->second;
}

bool CoreSelector::bound(Port port, std::size_t core) const {
    const auto* st = find(port);
    return st && core < num_cores_ && (st->bitmap >> core) & 1ULL;
}

std::uint64_t CoreSelector::bitmap(Port port) const {
    const auto* st = find(port);
    return st ? st->bitmap : 0;
}

std::size_t CoreSelector::rss_core(Port port) const {
    auto it = cfg_.rss_map.find(port);
    if (it != cfg_.rss_map.end()) return it->second;
    return num_cores_ == 0 ? 0 : port % num_cores_;
}

bool CoreSelector::accepts(Port port) const {
    if (cfg_.kind == SelectorKind::Rss) return bound(port, rss_core(port));
    return bitmap(port) != 0;
}

std::optional<std::size_t> CoreSelector::select(Port port) const {
    const auto* st = find(port);
    if (!st) return std::nullopt;
    if (cfg_.kind == SelectorKind::Rss) {
        const std::size_t c = rss_core(port);
        if (bound(port, c) && st->counts[c] < cfg_.n) return c;
        return std::nullopt;
    }
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < num_cores_; ++c) {
        if (!((st->bitmap >> c) & 1ULL)) continue;
        if (st->counts[c] >= cfg_.n) continue;
        if (!best || st->counts[c] < st->counts[*best]) best = c;
    }
    return best;
}

void CoreSelector::on_dispatch(Port port, std::size_t core) {
    auto& c = ports_.at(port).counts.at(core);
    if (c >= cfg_.n) throw SimError("selector: dispatch beyond the JBSQ bound");
    ++c;
    if (c > max_seen_) max_seen_ = c;
}

void CoreSelector::on_done(Port port, std::size_t core) {
    auto& c = ports_.at(port).counts.at(core);
    if (c == 0) throw SimError("selector: message-done for a core with no outstanding messages");
    --c;
}

std::uint32_t CoreSelector::count(Port port, std::size_t core) const {
    const auto* st = find(port);
    return st ? st->counts.at(core) : 0;
}

}  // namespace nanosim
