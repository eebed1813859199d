#include "ionspec/spins.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "ionspec/operators.hpp"

namespace ionspec {

Matrix build_ms_hamiltonian(const MsModel& model, const StateBasis& basis) {
    if (basis.kind() != BasisKind::Spin || basis.n_sites() != MsModel::kSpins)
        throw std::invalid_argument("build_ms_hamiltonian: requires a 2-spin basis");
    if (model.omega <= 0.0) throw std::invalid_argument("build_ms_hamiltonian: Omega must be > 0");
    const Matrix sx0 = spin_operator(basis, 0, SpinAxis::X);
    const Matrix sx1 = spin_operator(basis, 1, SpinAxis::X);
    return 0.5 * model.omega * sx0 * sx1;
}

NoiseSpec ms_noise(MsNoiseKind kind, double gamma) {
    switch (kind) {
        case MsNoiseKind::None:
            return {};
        case MsNoiseKind::Local:
            return {NoiseChannel{NoiseKind::SpinLocalDephasing, {0, 1}, gamma}};
        case MsNoiseKind::Collective:
            return {NoiseChannel{NoiseKind::SpinCollectiveDephasing, {0, 1}, gamma}};
    }
    throw std::logic_error("ms_noise: unknown kind");
}

SignalGrid2D ms_sqc_signal(const MsModel& model, const MsSpectrumRequest& request) {
    if (request.gamma < 0.0) throw std::invalid_argument("ms_sqc_signal: gamma must be >= 0");
    const StateBasis basis = StateBasis::spin(MsModel::kSpins);
    const Matrix h = build_ms_hamiltonian(model, basis);
    const Propagator prop(h, ms_noise(request.noise, request.gamma), basis);

    SpinSqcExperiment exp;
    exp.pulse_site = 0;
    exp.readout_site = 0;
    exp.pulse_beta = request.pulse_beta;

    ScanOptions options;
    options.mode = request.mode;
    options.steps_per_pulse = request.steps_per_pulse;
    options.threads = request.threads;

    return scan_spin_sqc(exp, request.grid, prop, ground_state_density(basis), basis, options);
}

Spectrum2D ms_sqc_spectrum(const MsModel& model, const MsSpectrumRequest& request) {
    const SignalGrid2D signal = ms_sqc_signal(model, request);
    const double eta_a = request.eta > 0.0
                             ? request.eta
                             : default_apodization(request.grid.n_a, request.grid.dt_a);
    const double eta_b = request.eta > 0.0
                             ? request.eta
                             : default_apodization(request.grid.n_b, request.grid.dt_b);
    return fourier_2d(signal, eta_a, eta_b, request.pad_factor);
}

GateErrorPoint ms_gate_fidelity(const MsModel& model, double gamma, MsNoiseKind kind) {
    if (gamma < 0.0) throw std::invalid_argument("ms_gate_fidelity: gamma must be >= 0");
    const StateBasis basis = StateBasis::spin(MsModel::kSpins);
    const Matrix h = build_ms_hamiltonian(model, basis);
    const double gate_time = M_PI / (2.0 * model.omega);

    const Propagator prop(h, ms_noise(kind, gamma), basis);
    const Matrix rho_gamma = prop.evolve(gate_time, ground_state_density(basis));

    // Ideal Bell state U_MS |00>.
    Vector ground = Vector::Zero(basis.dim());
    ground(0) = 1.0;
    const Matrix u_ideal = Matrix(-kImag * gate_time * h).exp();
    const Vector target = u_ideal * ground;

    const double overlap = std::max(0.0, (target.adjoint() * rho_gamma * target)(0).real());
    GateErrorPoint point;
    point.gamma = gamma;
    point.fidelity = std::sqrt(overlap);
    point.error = 1.0 - point.fidelity;
    return point;
}

GateErrorScan gate_error_scan(const MsModel& model, const std::vector<double>& gammas,
                              const MsSpectrumRequest& request) {
    if (gammas.empty()) throw std::invalid_argument("gate_error_scan: no gamma values");
    for (double g : gammas)
        if (g >= 0.1 * model.omega)
            std::cerr << "warning: gamma = " << g
                      << " is outside the weak-dephasing regime (gamma < 0.1 Omega)\n";

    GateErrorScan scan;
    for (double gamma : gammas) {
        GateErrorPoint point = ms_gate_fidelity(model, gamma, MsNoiseKind::Local);

        MsSpectrumRequest rq = request;
        rq.noise = MsNoiseKind::Local;
        rq.gamma = gamma;
        const Spectrum2D spec = ms_sqc_spectrum(model, rq);

        // Locate the (Omega, Omega) resonance among the detected peaks.
        const auto peaks = find_peaks(spec, 0.02);
        const double bin = spec.axis_a.step;
        const Peak* target = nullptr;
        double best = 9.0 * bin * bin;   // accept within 3 bins of (Omega, Omega)
        for (const auto& p : peaks) {
            const double da = p.omega_a - model.omega;
            const double db = p.omega_b - model.omega;
            const double dist2 = da * da + db * db;
            if (dist2 < best) {
                best = dist2;
                target = &p;
            }
        }
        if (target != nullptr) point.fwhm_omega1 = fwhm(spec, *target, 0);

        scan.points.push_back(point);
        if (!point.fwhm_omega1) {
            std::cerr << "warning: unresolved FWHM at gamma = " << gamma
                      << "; excluded from the linear fit\n";
            scan.excluded.push_back(scan.points.size() - 1);
        }
    }

    // Least squares fwhm = slope * (1-F) + intercept over the resolved points.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& p : scan.points) {
        if (!p.fwhm_omega1) continue;
        sx += p.error;
        sy += *p.fwhm_omega1;
        sxx += p.error * p.error;
        sxy += p.error * *p.fwhm_omega1;
        ++n;
    }
    if (n >= 2) {
        const double denom = n * sxx - sx * sx;
        scan.slope = (n * sxy - sx * sy) / denom;
        scan.intercept = (sy - scan.slope * sx) / n;
        for (const auto& p : scan.points) {
            if (!p.fwhm_omega1) continue;
            const double fit = scan.slope * p.error + scan.intercept;
            scan.max_rel_residual =
                std::max(scan.max_rel_residual, std::abs(*p.fwhm_omega1 - fit) / std::abs(*p.fwhm_omega1));
        }
    }
    return scan;
}

}  // namespace ionspec
