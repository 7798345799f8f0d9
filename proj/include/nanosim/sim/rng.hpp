#pragma once

#include <cstdint>

#include "nanosim/sim/sim_time.hpp"

namespace nanosim {

/// SplitMix64 finalizer (Steele, Lea & Flood). Used both as the stream
/// generator and for deriving independent seeds.
std::uint64_t mix64(std::uint64_t z);

/// Plain SplitMix64; state advances by the golden-ratio increment and each
/// output is mix64(state). Reference: seed 0 yields 0xe220a8397b1dcdaf first.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();

private:
    std::uint64_t state_;
};

/// Derives a child seed from a parent seed and an index; stable across
/// platforms and independent of how many other children exist.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

/// One independent random stream, keyed by (seed, stream_id). Streams never
/// share state, so adding a consumer cannot perturb another one's sequence.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return gen_.next(); }
    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform();
    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_int(std::uint64_t n);
    bool bernoulli(double p) { return uniform() < p; }
    /// Exponential inter-arrival for a Poisson process at rate_rps; always >= 1 ps.
    SimTime exp_sample(double rate_rps);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    SplitMix64 gen_;
};

}  // namespace nanosim
