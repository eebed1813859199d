#pragma once

#include <optional>
#include <vector>

#include "ionspec/dynamics.hpp"
#include "ionspec/pathways.hpp"
#include "ionspec/spectra.hpp"

namespace ionspec {

// Two-spin Molmer-Sorensen interaction H = (Omega/2) sigma_x (x) sigma_x.
struct MsModel {
    double omega = 1.0;
    static constexpr int kSpins = 2;
};

Matrix build_ms_hamiltonian(const MsModel& model, const StateBasis& basis);

enum class MsNoiseKind { None, Local, Collective };

// Dephasing channels of the lineshape study: local sigma_z on each spin or
// the collective sigma_z (x) sigma_z, all at rate gamma.
NoiseSpec ms_noise(MsNoiseKind kind, double gamma);

struct MsSpectrumRequest {
    MsNoiseKind noise = MsNoiseKind::None;
    double gamma = 0.0;
    GridSpec grid;
    double eta = 0.0;          // 0 = default 3/t_max per axis
    int pad_factor = 4;
    double pulse_beta = 0.1;   // used by the phase-cycled route
    EvaluationMode mode = EvaluationMode::Direct;
    int steps_per_pulse = 3;
    int threads = 1;
};

// SQC protocol on spin 1 (pulses and sigma_z readout on site 0, |00> initial
// state, signature (+1,-1)), both axes transformed.
Spectrum2D ms_sqc_spectrum(const MsModel& model, const MsSpectrumRequest& request);
SignalGrid2D ms_sqc_signal(const MsModel& model, const MsSpectrumRequest& request);

struct GateErrorPoint {
    double gamma = 0.0;
    double fidelity = 1.0;
    double error = 0.0;                  // 1 - F
    std::optional<double> fwhm_omega1;   // of the (Omega, Omega) peak
};

// F = sqrt(<00| U_MS^dag rho_gamma U_MS |00>), rho_gamma the state after the
// noisy gate of duration pi/(2 Omega).
GateErrorPoint ms_gate_fidelity(const MsModel& model, double gamma,
                                MsNoiseKind kind = MsNoiseKind::Local);

struct GateErrorScan {
    std::vector<GateErrorPoint> points;
    std::vector<std::size_t> excluded;   // indices with unresolved FWHM
    double slope = 0.0;
    double intercept = 0.0;
    double max_rel_residual = 0.0;
};

// FWHM along Omega_1 of the (Omega,Omega) peak under local dephasing versus
// gate error, with a least-squares line through the resolved points. The
// window eta is held fixed across the scan so its width floor cancels into
// the intercept.
GateErrorScan gate_error_scan(const MsModel& model, const std::vector<double>& gammas,
                              const MsSpectrumRequest& request);

}  // namespace ionspec
