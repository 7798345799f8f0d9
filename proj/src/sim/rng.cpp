#include "nanosim/sim/rng.hpp"

#include <cmath>

#include "nanosim/sim/engine.hpp"

namespace nanosim {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return mix64(mix64(parent + kGolden) ^ mix64(index * kGolden + 0x632BE59BD9B4E019ULL));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), gen_(derive_seed(seed, stream_id)) {}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_int: empty range");
    // Rejection keeps the mapping unbiased and identical on every platform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

SimTime RngStream::exp_sample(double rate_rps) {
    if (!(rate_rps > 0.0) || !std::isfinite(rate_rps)) {
        throw ConfigError("exp_sample: rate must be positive");
    }
    const double u = uniform();
    const double seconds = -std::log1p(-u) / rate_rps;
    const auto picos = static_cast<std::uint64_t>(std::llround(seconds * 1e12));
    return SimTime::ps(picos == 0 ? 1 : picos);
}

}  // namespace nanosim
