#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nanosim/cli/config.hpp"
#include "nanosim/cli/output.hpp"
#include "nanosim/cli/presets.hpp"
#include "nanosim/cli/scenarios.hpp"
#include "nanosim/nic/pipeline.hpp"
#include "nanosim/workload/metrics.hpp"

namespace py = pybind11;
using namespace nanosim;

namespace {

// Configuration crosses the boundary as JSON text; the Python side wraps it.
cli::Json resolve(const std::string& config, const std::vector<std::string>& overrides,
                  std::optional<std::uint64_t> seed) {
    cli::Json user = config.empty() ? cli::Json::object() : cli::parse_json(config, "<config>");
    if (user.is_string()) user = cli::load_config_arg(user.get<std::string>());
    return cli::resolve_config(user, overrides, seed);
}

}  // namespace

PYBIND11_MODULE(_nanosim, m) {
    m.doc() = "nanosim discrete-event simulator core";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SimError>(m, "SimError", PyExc_RuntimeError);

    m.def("presets", [] {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& p : cli::presets()) out.emplace_back(p.name, p.scenario, p.description);
        return out;
    });
    m.def("preset_config", [](const std::string& name) { return cli::preset_config(name).dump(); });
    m.def(
        "resolve",
        [](const std::string& config, const std::vector<std::string>& overrides, std::optional<std::uint64_t> seed) {
            return resolve(config, overrides, seed).dump();
        },
        py::arg("config"), py::arg("overrides") = std::vector<std::string>{}, py::arg("seed") = py::none());
    m.def(
        "run",
        [](const std::string& config, const std::vector<std::string>& overrides, std::optional<std::uint64_t> seed) {
            const cli::Json cfg = resolve(config, overrides, seed);
            ExperimentResult result;
            {
                py::gil_scoped_release release;
                result = cli::run_config(cfg);
            }
            return py::make_tuple(cli::render_outputs(result, cfg), result.incomplete);
        },
        py::arg("config"), py::arg("overrides") = std::vector<std::string>{}, py::arg("seed") = py::none());
    m.def("parse_load_grid", &cli::parse_load_grid);
    m.def("percentile", &percentile, py::arg("values"), py::arg("p"));
    m.def("nic_packet_rate", &nic_packet_rate, py::arg("frame_bytes"), py::arg("line_rate_bps") = 200'000'000'000ULL);
}
