#include "ionspec/runner.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include <nlohmann/json.hpp>

#include "ionspec/chain.hpp"
#include "ionspec/io.hpp"
#include "ionspec/operators.hpp"
#include "ionspec/version.hpp"

namespace ionspec {

namespace {

namespace fs = std::filesystem;

struct PhononSetup {
    StateBasis basis;
    ChainModel model;
    Propagator propagator;
    Matrix rho0;
};

PhononSetup phonon_setup(const ExperimentConfig& cfg, int cap_override = 0) {
    const int cap = cap_override > 0 ? cap_override : cfg.chain.excitation_cap;
    StateBasis basis = StateBasis::phonon(cfg.chain.n_ions, cap);
    const ChainGeometry geometry = solve_equilibrium(cfg.chain.n_ions);
    ChainModel model = build_chain_model(geometry, cfg.chain.beta, cfg.chain.anharmonicity);
    const Matrix h = build_hamiltonian(model, basis);
    Propagator prop(h, cfg.noise, basis);
    Matrix rho0 = ground_state_density(basis);
    return PhononSetup{std::move(basis), std::move(model), std::move(prop), std::move(rho0)};
}

double resolved_eta(const std::optional<double>& eta, int n, double dt) {
    return eta ? *eta : default_apodization(n, dt);
}

SignalGrid2D scan_phonon(const ExperimentConfig& cfg, const PhononSetup& setup,
                         const GridSpec& grid, double alpha,
                         std::optional<EvaluationMode> mode_override = std::nullopt) {
    ScanOptions options;
    options.mode = mode_override ? *mode_override : cfg.evaluation;
    options.steps_per_pulse = cfg.cycle_steps();
    options.fixed_last_phase = cfg.phase_cycle.fixed_last_phase;
    options.threads = cfg.threads;

    if (cfg.experiment == ExperimentKind::Sqc) {
        SqcExperiment exp;
        exp.site_first = cfg.pulse_sites[0];
        exp.site_second = cfg.pulse_sites[1];
        exp.readout_site = cfg.readout_site;
        exp.alpha = alpha;
        exp.pulse_model = cfg.pulse_model;
        return scan_sqc(exp, grid, setup.propagator, setup.rho0, setup.basis, options);
    }
    DqcExperiment exp;
    exp.pulse_sites = {cfg.pulse_sites[0], cfg.pulse_sites[1], cfg.pulse_sites[2], cfg.pulse_sites[3]};
    exp.readout_site = cfg.readout_site;
    exp.alpha = alpha;
    exp.pulse_model = cfg.pulse_model;
    exp.variant = cfg.dqc_variant;
    exp.t2 = cfg.dqc_t2;
    exp.t4 = cfg.dqc_t4;
    return scan_dqc(exp, grid, setup.propagator, setup.rho0, setup.basis, options);
}

Spectrum2D transform(const ExperimentConfig& cfg, const SignalGrid2D& signal) {
    return fourier_2d(signal, resolved_eta(cfg.window.eta_a, cfg.grid.n_a, cfg.grid.dt_a),
                      resolved_eta(cfg.window.eta_b, cfg.grid.n_b, cfg.grid.dt_b),
                      cfg.window.pad_factor);
}

void write_manifest(const ExperimentConfig& cfg, RunArtifacts& artifacts) {
    nlohmann::json manifest;
    manifest["tool"] = kToolName;
    manifest["version"] = kVersion;
    manifest["config"] = cfg.to_json();
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& f : artifacts.files) outputs.push_back(f.filename().string());
    manifest["outputs"] = outputs;
    const fs::path path = cfg.output_dir / (cfg.tag + "_manifest.json");
    write_json(path, manifest);
    artifacts.files.push_back(path);
}

void write_spectrum_bundle(const ExperimentConfig& cfg, const std::string& suffix,
                           const SignalGrid2D& signal, const Spectrum2D& spectrum,
                           RunArtifacts& artifacts) {
    const fs::path time_path = cfg.output_dir / (cfg.tag + suffix + "_time.csv");
    write_signal_csv(time_path, signal);
    artifacts.files.push_back(time_path);

    const fs::path spec_path = cfg.output_dir / (cfg.tag + suffix + "_spectrum.csv");
    write_spectrum_csv(spec_path, spectrum);
    artifacts.files.push_back(spec_path);

    nlohmann::json peaks_json;
    peaks_json["meta"] = spectrum_meta(spectrum);
    peaks_json["meta"]["experiment"] = experiment_name(cfg.experiment);
    peaks_json["meta"]["rel_threshold"] = 0.01;
    auto peaks = find_peaks(spectrum, 0.01);
    for (auto& p : peaks) {
        p.fwhm_a = fwhm(spectrum, p, 0);
        p.fwhm_b = fwhm(spectrum, p, 1);
    }
    peaks_json["peaks"] = peaks_to_json(peaks);
    const fs::path peaks_path = cfg.output_dir / (cfg.tag + suffix + "_peaks.json");
    write_json(peaks_path, peaks_json);
    artifacts.files.push_back(peaks_path);
}

RunArtifacts run_chain_modes(const ExperimentConfig& cfg) {
    RunArtifacts artifacts;
    const ChainGeometry geometry = solve_equilibrium(cfg.chain.n_ions);
    const ChainModel model = build_chain_model(geometry, cfg.chain.beta, cfg.chain.anharmonicity);
    const ExcitonBasis excitons = diagonalize_single_sector(model);

    const fs::path model_path = cfg.output_dir / (cfg.tag + "_model.json");
    write_json(model_path, model.to_json());
    artifacts.files.push_back(model_path);

    // Modes CSV: one row per mode, frequency then site amplitudes.
    const fs::path modes_path = cfg.output_dir / (cfg.tag + "_modes.csv");
    {
        std::ofstream out(modes_path);
        if (!out) throw std::runtime_error("cannot open output file " + modes_path.string());
        out << "mode,frequency";
        for (int i = 0; i < model.n_ions; ++i) out << ",c_site" << i;
        out << '\n';
        for (int k = 0; k < model.n_ions; ++k) {
            out << k << ',' << format_double(excitons.frequencies[k]);
            for (int i = 0; i < model.n_ions; ++i) out << ',' << format_double(excitons.modes(i, k));
            out << '\n';
        }
    }
    artifacts.files.push_back(modes_path);
    return artifacts;
}

RunArtifacts run_phonon_2d(const ExperimentConfig& cfg) {
    RunArtifacts artifacts;
    const PhononSetup setup = phonon_setup(cfg);
    const SignalGrid2D signal = scan_phonon(cfg, setup, cfg.grid, cfg.pulse_alpha);
    const Spectrum2D spectrum = transform(cfg, signal);
    write_spectrum_bundle(cfg, "", signal, spectrum, artifacts);
    return artifacts;
}

RunArtifacts run_spins_lineshape(const ExperimentConfig& cfg) {
    RunArtifacts artifacts;
    nlohmann::json comparison = nlohmann::json::array();
    int panel_idx = 0;
    for (const auto& panel : cfg.panels) {
        std::string suffix = "_none";
        if (panel.noise == MsNoiseKind::Local) suffix = "_local";
        if (panel.noise == MsNoiseKind::Collective) suffix = "_collective";
        if (cfg.panels.size() > 2) suffix += std::to_string(panel_idx);

        MsSpectrumRequest request;
        request.noise = panel.noise;
        request.gamma = panel.gamma;
        request.grid = cfg.grid;
        request.eta = cfg.window.eta_a ? *cfg.window.eta_a : 0.0;
        request.pad_factor = cfg.window.pad_factor;
        request.pulse_beta = cfg.spin_pulse_beta;
        request.mode = cfg.evaluation;
        request.threads = cfg.threads;

        const SignalGrid2D signal = ms_sqc_signal(cfg.ms, request);
        const Spectrum2D spectrum = ms_sqc_spectrum(cfg.ms, request);
        write_spectrum_bundle(cfg, suffix, signal, spectrum, artifacts);

        // Lineshape summary of the (Omega, Omega) resonance.
        nlohmann::json entry;
        entry["noise"] = suffix.substr(1);
        entry["gamma"] = panel.gamma;
        const auto peaks = find_peaks(spectrum, 0.02);
        const double bin = spectrum.axis_a.step;
        for (const auto& p : peaks) {
            if (std::abs(p.omega_a - cfg.ms.omega) < 3 * bin &&
                std::abs(p.omega_b - cfg.ms.omega) < 3 * bin) {
                const auto wa = fwhm(spectrum, p, 0);
                const auto wb = fwhm(spectrum, p, 1);
                entry["peak"] = {{"omega_a", p.omega_a}, {"omega_b", p.omega_b},
                                 {"magnitude", p.magnitude}};
                entry["fwhm_omega1"] = wa ? nlohmann::json(*wa) : nlohmann::json();
                entry["fwhm_omega2"] = wb ? nlohmann::json(*wb) : nlohmann::json();
                break;
            }
        }
        comparison.push_back(std::move(entry));
        ++panel_idx;
    }
    const fs::path cmp_path = cfg.output_dir / (cfg.tag + "_lineshapes.json");
    write_json(cmp_path, comparison);
    artifacts.files.push_back(cmp_path);
    return artifacts;
}

RunArtifacts run_gate_error_scan(const ExperimentConfig& cfg) {
    RunArtifacts artifacts;
    MsSpectrumRequest request;
    request.grid = cfg.grid;
    request.eta = cfg.window.eta_a ? *cfg.window.eta_a : 0.0;
    request.pad_factor = cfg.window.pad_factor;
    request.pulse_beta = cfg.spin_pulse_beta;
    request.threads = cfg.threads;
    const GateErrorScan scan = gate_error_scan(cfg.ms, cfg.scan_gammas, request);

    const fs::path csv_path = cfg.output_dir / (cfg.tag + "_scan.csv");
    {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open output file " + csv_path.string());
        out << "gamma,fidelity,error,fwhm_omega1\n";
        for (const auto& p : scan.points) {
            out << format_double(p.gamma) << ',' << format_double(p.fidelity) << ','
                << format_double(p.error) << ','
                << (p.fwhm_omega1 ? format_double(*p.fwhm_omega1) : "unresolved") << '\n';
        }
    }
    artifacts.files.push_back(csv_path);

    nlohmann::json fit;
    fit["slope"] = scan.slope;
    fit["intercept"] = scan.intercept;
    fit["max_rel_residual"] = scan.max_rel_residual;
    fit["n_points"] = scan.points.size();
    fit["excluded"] = scan.excluded;
    const fs::path fit_path = cfg.output_dir / (cfg.tag + "_fit.json");
    write_json(fit_path, fit);
    artifacts.files.push_back(fit_path);
    return artifacts;
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.output_dir);
    RunArtifacts artifacts;
    switch (cfg.experiment) {
        case ExperimentKind::ChainModes: artifacts = run_chain_modes(cfg); break;
        case ExperimentKind::Sqc:
        case ExperimentKind::Dqc: artifacts = run_phonon_2d(cfg); break;
        case ExperimentKind::SpinsLineshape: artifacts = run_spins_lineshape(cfg); break;
        case ExperimentKind::GateErrorScan: artifacts = run_gate_error_scan(cfg); break;
    }
    write_manifest(cfg, artifacts);
    return artifacts;
}

nlohmann::json ConvergenceReport::to_json() const {
    nlohmann::json j;
    j["cap_check"] = {{"relative_change", cap_relative_change},
                      {"threshold", cap_threshold},
                      {"pass", cap_pass}};
    j["alpha_check"] = {{"relative_change", alpha_relative_change},
                        {"threshold", alpha_threshold},
                        {"pass", alpha_pass}};
    j["grid_check"] = {{"max_shift_bins", grid_max_shift_bins}, {"pass", grid_pass}};
    j["all_pass"] = all_pass();
    return j;
}

ConvergenceReport convergence_report(const ExperimentConfig& cfg) {
    if (cfg.experiment != ExperimentKind::Sqc && cfg.experiment != ExperimentKind::Dqc)
        throw ConfigError("/experiment", "convergence checks apply to phonon experiments");

    ConvergenceReport report;
    const double alpha = cfg.pulse_alpha;

    // Excitation-cap check on the phase-cycled signal (the direct pathway
    // chains never leave the low sectors, so only the emulated pulses probe
    // the truncation).
    {
        const PhononSetup base = phonon_setup(cfg);
        const PhononSetup bigger = phonon_setup(cfg, cfg.chain.excitation_cap + 1);
        const SignalGrid2D s_base =
            scan_phonon(cfg, base, cfg.grid, alpha, EvaluationMode::PhaseCycled);
        const SignalGrid2D s_big =
            scan_phonon(cfg, bigger, cfg.grid, alpha, EvaluationMode::PhaseCycled);
        const double scale = s_base.values.cwiseAbs().maxCoeff();
        report.cap_relative_change =
            (s_big.values - s_base.values).cwiseAbs().maxCoeff() / scale;
        report.cap_threshold = 5.0 * alpha * alpha;
        report.cap_pass = report.cap_relative_change < report.cap_threshold;

        // Amplitude check: normalized phase-cycled signals at alpha and
        // alpha/2 agree to the stated residual contamination bound.
        const SignalGrid2D s_half =
            scan_phonon(cfg, base, cfg.grid, alpha / 2.0, EvaluationMode::PhaseCycled);
        report.alpha_relative_change =
            (s_half.values - s_base.values).cwiseAbs().maxCoeff() / scale;
        report.alpha_pass = report.alpha_relative_change < report.alpha_threshold;
    }

    // Grid check: twice finer sampling of the same span must keep the top
    // peak positions within one original frequency bin.
    {
        const PhononSetup setup = phonon_setup(cfg);
        const SignalGrid2D coarse = scan_phonon(cfg, setup, cfg.grid, alpha);
        GridSpec fine_grid{cfg.grid.n_a * 2, cfg.grid.dt_a / 2.0, cfg.grid.n_b * 2,
                           cfg.grid.dt_b / 2.0};
        const SignalGrid2D fine = scan_phonon(cfg, setup, fine_grid, alpha);

        const double eta_a = resolved_eta(cfg.window.eta_a, cfg.grid.n_a, cfg.grid.dt_a);
        const double eta_b = resolved_eta(cfg.window.eta_b, cfg.grid.n_b, cfg.grid.dt_b);
        const Spectrum2D spec_coarse = fourier_2d(coarse, eta_a, eta_b, cfg.window.pad_factor);
        const Spectrum2D spec_fine = fourier_2d(fine, eta_a, eta_b, cfg.window.pad_factor);

        const auto peaks_coarse = find_peaks(spec_coarse, 0.05);
        const auto peaks_fine = find_peaks(spec_fine, 0.05);
        const double bin = spec_coarse.axis_a.step;
        double worst = peaks_coarse.empty() ? 1e9 : 0.0;
        for (const auto& p : peaks_coarse) {
            double nearest = 1e9;
            for (const auto& q : peaks_fine) {
                const double d = std::hypot(q.omega_a - p.omega_a, q.omega_b - p.omega_b);
                nearest = std::min(nearest, d);
            }
            worst = std::max(worst, nearest / bin);
        }
        report.grid_max_shift_bins = worst;
        report.grid_pass = worst <= 1.0;
    }
    return report;
}

}  // namespace ionspec
