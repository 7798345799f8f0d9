#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace nanosim {

__extension__ using u128 = unsigned __int128;

/// Simulated time as an integer count of picoseconds.
///
/// Cycle counts at the 3.2 GHz target clock convert with cycles * 625 / 2,
/// rounding half up for odd counts, so every conversion is exact and
/// platform independent.
class SimTime {
public:
    constexpr SimTime() = default;

    static constexpr SimTime ps(std::uint64_t v) { return SimTime(v); }
    static constexpr SimTime ns(std::uint64_t v) { return SimTime(v * 1000); }
    static constexpr SimTime us(std::uint64_t v) { return SimTime(v * 1000000); }
    static constexpr SimTime cycles(std::uint64_t c) { return SimTime((c * 625 + 1) / 2); }
    /// Rounds a fractional nanosecond value to the nearest picosecond.
    static SimTime from_ns(double v);
    static constexpr SimTime max() { return SimTime(std::numeric_limits<std::uint64_t>::max()); }

    constexpr std::uint64_t picos() const { return ps_; }
    constexpr double to_ns() const { return static_cast<double>(ps_) / 1000.0; }
    constexpr double to_us() const { return static_cast<double>(ps_) / 1.0e6; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime o) const { return SimTime(ps_ + o.ps_); }
    constexpr SimTime& operator+=(SimTime o) { ps_ += o.ps_; return *this; }
    SimTime operator-(SimTime o) const {
        if (o.ps_ > ps_) throw std::logic_error("SimTime underflow");
        return SimTime(ps_ - o.ps_);
    }
    SimTime& operator-=(SimTime o) { *this = *this - o; return *this; }
    constexpr SimTime operator*(std::uint64_t k) const { return SimTime(ps_ * k); }

    /// Exact decimal nanoseconds, e.g. "43.520".
    std::string ns_string() const;

private:
    constexpr explicit SimTime(std::uint64_t v) : ps_(v) {}
    std::uint64_t ps_ = 0;
};

}  // namespace nanosim
