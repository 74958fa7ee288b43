#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "frostlab/runner/config.hpp"
#include "frostlab/runner/csv.hpp"

namespace frostlab::runner {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

struct ScenarioOutput {
    nlohmann::ordered_json result;
    std::vector<CsvTable> tables;
    std::vector<std::string> violations;  // empty means every bound held
};

/// Runs the scenario in memory. Library errors propagate as exceptions.
ScenarioOutput run_scenario(const ExperimentConfig& cfg);

struct RunStatus {
    int exit_code = kExitError;
    std::string stage;  // last stage entered: config, compute, write, done
    std::string error;
    std::vector<std::string> files;
};

/// Runs the scenario and writes report.json, the CSV tables and
/// manifest.json into cfg.output_dir. The manifest is written whatever
/// happens.
RunStatus run(const ExperimentConfig& cfg);

/// Writes a manifest for a run that failed before a config existed.
void write_failure_manifest(const std::string& dir, const std::string& scenario,
                            const std::string& stage, const std::string& error);

/// Command line entry: frostlab <scenario> --config <file> [--out dir]
/// [--alpha v] [--seed n].
int main_entry(int argc, char** argv);

}  // namespace frostlab::runner
