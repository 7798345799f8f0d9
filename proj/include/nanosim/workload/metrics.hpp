#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nanosim/sim/csv.hpp"
#include "nanosim/sim/sim_time.hpp"

namespace nanosim {

struct LatencySample {
    std::uint64_t request_id = 0;
    std::uint32_t priority = 0;
    std::uint32_t klass = 0;
    SimTime send;
    SimTime complete;

    SimTime latency() const { return complete - send; }
};

/// Nearest-rank percentile: the value at 1-based rank ceil(p/100 * n) of the
/// sorted input. Throws std::invalid_argument on empty input or p outside (0, 100].
double percentile(std::vector<double> values, double p);

/// Latencies in ns of every sample matching the filter (all when negative).
std::vector<double> latencies_ns(const std::vector<LatencySample>& samples, int priority = -1, int klass = -1);

struct SummaryRow {
    std::string experiment;
    double offered_rps = 0;
    double normalized_load = 0;
    double p50_ns = 0;
    double p99_ns = 0;
    std::uint64_t completed = 0;
    std::uint64_t incomplete = 0;
};

/// Summary for a sample subset; p50/p99 are 0 when it is empty.
SummaryRow summarize(std::string experiment, double offered_rps, double normalized_load,
                     const std::vector<double>& latencies, std::uint64_t incomplete);

std::vector<std::string> samples_header();
std::vector<std::string> summary_header();
std::vector<std::string> qtrace_header();

void add_samples(CsvWriter& csv, const std::string& experiment, std::uint64_t seed, double offered_rps,
                 const std::vector<LatencySample>& samples);
void add_summary(CsvWriter& csv, const SummaryRow& row);

/// Nanoseconds with three decimals, exact for integer picoseconds.
std::string ns_field(SimTime t);

}  // namespace nanosim
