#ifndef LAB_RUNNER_HPP
#define LAB_RUNNER_HPP

#include <string>

#include <json.hpp>

#include "lab/cache.hpp"
#include "lab/config.hpp"

namespace lab {

struct RunOptions {
    std::string out_dir = ".";
    int workers = 0;  // 0 = hardware concurrency
    bool use_cache = true;
    std::string stem = "result";  // artifact basename, from the config filename
};

struct RunArtifacts {
    std::string json_path;
    std::string csv_path;
    std::string timings_path;
};

/// Computes the result document for a config.  Pure relative to (config,
/// cache contents): contains no timings, hostnames, or other run metadata,
/// so identical configs yield byte-identical serializations regardless of
/// worker count.  `cache` may be null.
nlohmann::json execute(const ExperimentConfig& config, int workers, EvalCache* cache);

/// Fixed-schema CSV text for a result document (LF rows, RFC-4180 quoting).
std::string csv_for_result(const nlohmann::json& result);

/// execute + artifact emission.  Writes <stem>.result.json and
/// <stem>.result.csv (deterministic) plus <stem>.timings.json (wall-clock
/// sidecar, excluded from the determinism contract).
RunArtifacts run_experiment(const ExperimentConfig& config, const RunOptions& options);

}  // namespace lab

#endif
