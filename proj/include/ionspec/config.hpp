#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ionspec/dynamics.hpp"
#include "ionspec/pathways.hpp"
#include "ionspec/spins.hpp"

namespace ionspec {

// Invalid configuration input; `field` is the JSON pointer of the offending
// entry. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

enum class ExperimentKind { ChainModes, Sqc, Dqc, SpinsLineshape, GateErrorScan };

struct ChainSection {
    int n_ions = 2;
    double beta = 0.1;
    double anharmonicity = 0.0;
    int excitation_cap = 2;
};

struct WindowSection {
    std::optional<double> eta_a;   // absent = default 3/t_max
    std::optional<double> eta_b;
    int pad_factor = 2;
};

struct PhaseCycleSection {
    int steps_per_pulse = 0;        // 0 = model default (3 linearized, 5 exact)
    bool fixed_last_phase = true;   // phonon experiments only
};

struct SpinsPanel {
    MsNoiseKind noise = MsNoiseKind::None;
    double gamma = 0.0;
};

// Validated experiment configuration; unknown keys are rejected and every
// default is resolved at parse time so the manifest reflects the exact run.
struct ExperimentConfig {
    int schema_version = 1;
    ExperimentKind experiment = ExperimentKind::Sqc;
    std::string tag;
    std::filesystem::path output_dir = "out";
    int threads = 1;
    unsigned seed = 0;   // reserved; the pipeline is deterministic

    ChainSection chain;
    MsModel ms;
    double pulse_alpha = 0.1;
    PulseModel pulse_model = PulseModel::Linearized;
    double spin_pulse_beta = 0.1;
    std::vector<int> pulse_sites;
    int readout_site = 0;
    NoiseSpec noise;
    GridSpec grid;
    WindowSection window;
    EvaluationMode evaluation = EvaluationMode::Direct;
    PhaseCycleSection phase_cycle;
    DqcVariant dqc_variant = DqcVariant::Sum;
    double dqc_t2 = 0.0;
    double dqc_t4 = 0.0;
    std::vector<SpinsPanel> panels;
    std::vector<double> scan_gammas;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::filesystem::path& path);
    nlohmann::json to_json() const;   // fully resolved, for the run manifest

    int cycle_steps() const;   // resolved steps_per_pulse
};

std::string experiment_name(ExperimentKind kind);

}  // namespace ionspec
