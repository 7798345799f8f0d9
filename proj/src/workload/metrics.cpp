#include "nanosim/workload/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nanosim {

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of an empty sample set");
    if (!(p > 0.0 && p <= 100.0)) throw std::invalid_argument("percentile rank must be in (0, 100]");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    // Guard against p/100*n landing a hair above an integer through rounding.
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, values.size());
    return values[rank - 1];
}

std::vector<double> latencies_ns(const std::vector<LatencySample>& samples, int priority, int klass) {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        if (priority >= 0 && s.priority != static_cast<std::uint32_t>(priority)) continue;
        if (klass >= 0 && s.klass != static_cast<std::uint32_t>(klass)) continue;
        out.push_back(s.latency().to_ns());
    }
    return out;
}

SummaryRow summarize(std::string experiment, double offered_rps, double normalized_load,
                     const std::vector<double>& latencies, std::uint64_t incomplete) {
    SummaryRow r;
    r.experiment = std::move(experiment);
    r.offered_rps = offered_rps;
    r.normalized_load = normalized_load;
    r.completed = latencies.size();
    r.incomplete = incomplete;
    if (!latencies.empty()) {
        r.p50_ns = percentile(latencies, 50);
        r.p99_ns = percentile(latencies, 99);
    }
    return r;
}

std::vector<std::string> samples_header() {
    return {"experiment", "seed", "offered_rps", "request_id", "priority", "send_ns", "complete_ns", "latency_ns"};
}

std::vector<std::string> summary_header() {
    return {"experiment", "offered_rps", "normalized_load", "p50_ns", "p99_ns", "completed", "incomplete"};
}

std::vector<std::string> qtrace_header() { return {"t_ns", "occupancy_bytes", "occupancy_pkts", "action"}; }

std::string ns_field(SimTime t) { return t.ns_string(); }

void add_samples(CsvWriter& csv, const std::string& experiment, std::uint64_t seed, double offered_rps,
                 const std::vector<LatencySample>& samples) {
    const std::string seed_s = std::to_string(seed);
    const std::string rate_s = fmt_fixed(offered_rps, 1);
    for (const auto& s : samples) {
        csv.add_row({experiment, seed_s, rate_s, std::to_string(s.request_id), std::to_string(s.priority),
                     ns_field(s.send), ns_field(s.complete), ns_field(s.latency())});
    }
}

void add_summary(CsvWriter& csv, const SummaryRow& row) {
    csv.add_row({row.experiment, fmt_fixed(row.offered_rps, 1), fmt_fixed(row.normalized_load, 4),
                 fmt_fixed(row.p50_ns, 3), fmt_fixed(row.p99_ns, 3), std::to_string(row.completed),
                 std::to_string(row.incomplete)});
}

}  // namespace nanosim
