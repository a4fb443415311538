#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orlicz/io.hpp"

namespace orlicz {

struct ExperimentResult {
    bool passed = false;
    io::json report;
    std::vector<std::string> files;               // paths written
    std::map<std::string, std::string> outputs;  // file name -> content
};

/// Runs one scenario. With an empty output_dir nothing is written to disk
/// and the artifacts are only returned in `outputs`.
ExperimentResult run_scenario(const OrliczFunction& phi, const std::string& scenario,
                              const io::json& params, std::uint64_t seed,
                              const std::string& output_dir, const std::string& base_dir = ".");

/// Config keys: "orlicz" (inline) or "orlicz_file", "scenario", "params",
/// "output_dir", "seed". Relative paths resolve against base_dir.
/// Scenarios: condition-check, construct, curve, detect, isometry.
ExperimentResult run_experiment(const io::json& config, const std::string& base_dir = ".");

/// Reads and runs a config file; syntax errors carry line and column.
ExperimentResult run_experiment_file(const std::string& path);

/// Outcome of one detector trial against the support_relation ground truth.
struct DetectTrial {
    Relation truth = Relation::disjoint;
    Verdict verdict;
    bool conclusive = false;
    bool agrees = false;
};

/// Normalizes f and g, runs the detector for phi's regime and scores it.
DetectTrial detect_trial(const StepFunction& f, const StepFunction& g, const OrliczFunction& phi,
                         const DetectorOptions& opts = {});

}  // namespace orlicz
