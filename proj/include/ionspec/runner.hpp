#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ionspec/config.hpp"

namespace ionspec {

struct RunArtifacts {
    std::vector<std::filesystem::path> files;
};

// Executes one experiment and writes its artifacts (time-domain CSV, spectrum
// CSV, peaks JSON, run manifest) under cfg.output_dir. Deterministic:
// identical configs produce bit-identical CSV payloads.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

// Self-consistency checks for phonon experiments: excitation cap + 1, pulse
// amplitude halved (phase-cycled route, normalized signals), and a twice
// finer time grid. Thresholds: cap 5 alpha^2, alpha 1%, peak positions stable
// within one original frequency bin.
struct ConvergenceReport {
    double cap_relative_change = 0.0;
    double cap_threshold = 0.0;
    bool cap_pass = false;
    double alpha_relative_change = 0.0;
    double alpha_threshold = 0.01;
    bool alpha_pass = false;
    double grid_max_shift_bins = 0.0;
    bool grid_pass = false;

    bool all_pass() const { return cap_pass && alpha_pass && grid_pass; }
    nlohmann::json to_json() const;
};

ConvergenceReport convergence_report(const ExperimentConfig& cfg);

}  // namespace ionspec
