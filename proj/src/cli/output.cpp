#include "nanosim/cli/output.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "nanosim/sim/engine.hpp"

namespace nanosim::cli {

OutputFiles render_outputs(const ExperimentResult& r, const Json& cfg) {
    OutputFiles files;
    files["config.json"] = cfg.dump(2) + "\n";

    CsvWriter summary(summary_header());
    for (const auto& row : r.summary) add_summary(summary, row);
    files["summary.csv"] = summary.str();

    CsvWriter samples(samples_header());
    for (const auto& b : r.samples) add_samples(samples, b.experiment, b.seed, b.offered_rps, b.samples);
    files["samples.csv"] = samples.str();

    CsvWriter qtrace(qtrace_header());
    for (const auto& e : r.qtrace) {
        qtrace.add_row({ns_field(e.t), std::to_string(e.occupancy_bytes), std::to_string(e.occupancy_pkts),
                        to_string(e.action)});
    }
    files["qtrace.csv"] = qtrace.str();

    CsvWriter metrics(metrics_header());
    for (const auto& m : r.metrics) metrics.add_row({m.experiment, m.metric, fmt_fixed(m.value, 6), m.unit});
    files["metrics.csv"] = metrics.str();

    CsvWriter nic(nic_header());
    for (const auto& row : r.nic_rows) nic.add_row(row);
    files["nic_metrics.csv"] = nic.str();

    CsvWriter threads(thread_header());
    for (const auto& row : r.thread_rows) threads.add_row(row);
    files["thread_metrics.csv"] = threads.str();

    std::string log;
    for (const auto& line : r.log) log += line + "\n";
    log += std::string("status: ") + (r.incomplete ? "incomplete" : "complete") + "\n";
    files["log.txt"] = log;
    return files;
}

std::filesystem::path output_root(const std::string& explicit_root) {
    if (!explicit_root.empty()) return explicit_root;
    if (const char* env = std::getenv("NANOSIM_OUT"); env && *env) return env;
    return "out";
}

std::filesystem::path write_outputs(const std::filesystem::path& root, const std::string& experiment,
                                    const std::string& tag, const OutputFiles& files) {
    if (tag.find('/') != std::string::npos || tag == "." || tag == "..") {
        throw ConfigError("--tag: must be a plain directory name");
    }
    std::filesystem::path dir = root / experiment;
    if (!tag.empty()) {
        dir /= tag;
    } else {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
        std::filesystem::path cand = dir / buf;
        for (int i = 1; std::filesystem::exists(cand); ++i) cand = dir / (std::string(buf) + "-" + std::to_string(i));
        dir = cand;
    }
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : files) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        out << content;
    }
    return dir;
}

}  // namespace nanosim::cli
