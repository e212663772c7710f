#include <fstream>

#include <json.hpp>

#include "holodyn/cli.hpp"

namespace holodyn::cli {

void write_report(const std::string& out_path, const std::string& command,
                  const std::map<std::string, std::string>& effective_config,
                  const std::string& payload_json, double wall_ms) {
    nlohmann::json j;
    j["tool"] = "holodyn";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["config"] = effective_config;
    j["wall_time_ms"] = wall_ms;
    j["tolerances"] = {
        {"root_residual", 1e-10},
        {"cycle_residual", 1e-12},
        {"parameter_residual", 1e-12},
        {"ray_landing", 1e-5},
        {"thurston_conjugacy", 1e-8},
        {"series_residual", 1e-8},
        {"flow_exactness", 1e-6},
        {"basin_root_capture", 1e-8},
    };
    if (!payload_json.empty()) j["result"] = nlohmann::json::parse(payload_json);
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write report: " + out_path);
    out << j.dump(2) << "\n";
}

}  // namespace holodyn::cli
