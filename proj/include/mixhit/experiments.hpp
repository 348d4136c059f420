#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixhit/config.hpp"
#include "mixhit/report.hpp"

namespace mixhit {

struct ExperimentOutput {
    std::string experiment;
    std::string status;  // "ok", "audit-failed" or "failed"
    std::string error;
    std::vector<std::string> files;
    double seconds = 0.0;
};

struct RunManifest {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string version;
    std::string timestamp;
    std::vector<ExperimentOutput> outputs;

    bool any_failed() const;
    bool audit_failed() const;
    nlohmann::json to_json() const;
};

// Result tables of one experiment. Throws on failure.
std::vector<ResultTable> run_single_experiment(const std::string& name, const RunConfig& config);

// Runs every configured experiment, writes CSV, plot-data and results.json
// into out_dir, and writes manifest.json last.
RunManifest run_experiment(const RunConfig& config, const std::filesystem::path& out_dir);

// Per-experiment seed, independent of the run order.
std::uint64_t experiment_seed(std::uint64_t base, const std::string& name);

}  // namespace mixhit
