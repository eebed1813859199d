#include "ionspec/pulses.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "ionspec/operators.hpp"

namespace ionspec {

PulseEvent PulseEvent::phonon(int site, double phase, double alpha, PulseModel model) {
    if (alpha < 0.0) throw std::invalid_argument("PulseEvent: alpha must be >= 0");
    if (model == PulseModel::Linearized && alpha > 0.3)
        std::cerr << "warning: linearized pulse with alpha = " << alpha
                  << " is outside the perturbative regime\n";
    PulseEvent e;
    e.kind = Kind::Phonon;
    e.site = site;
    e.phase = phase;
    e.alpha = alpha;
    e.model = model;
    return e;
}

PulseEvent PulseEvent::spin(int site, double phase, double beta) {
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("PulseEvent: beta must be in [0,1]");
    PulseEvent e;
    e.kind = Kind::Spin;
    e.site = site;
    e.phase = phase;
    e.beta = beta;
    e.alpha = std::sqrt(1.0 - beta * beta);   // real amplitudes, unitarity exact
    e.model = PulseModel::Exact;
    return e;
}

double PulseEvent::first_harmonic_weight() const {
    return kind == Kind::Phonon ? alpha : alpha * beta;
}

namespace {

void check_kind(const PulseEvent& event, const StateBasis& basis) {
    if (event.kind == PulseEvent::Kind::Phonon && basis.kind() != BasisKind::Phonon)
        throw std::invalid_argument("pulse: phonon pulse on non-phonon basis");
    if (event.kind == PulseEvent::Kind::Spin && basis.kind() != BasisKind::Spin)
        throw std::invalid_argument("pulse: spin pulse on non-spin basis");
}

}  // namespace

Matrix pulse_matrix(const PulseEvent& event, const StateBasis& basis) {
    check_kind(event, basis);
    const int d = basis.dim();
    const Complex eip = std::exp(kImag * event.phase);

    if (event.kind == PulseEvent::Kind::Spin) {
        const Matrix sp = spin_operator(basis, event.site, SpinAxis::Plus);
        return event.alpha * Matrix::Identity(d, d) +
               event.beta * (eip * sp - std::conj(eip) * Matrix(sp.adjoint()));
    }

    const Matrix ad = ladder_operator(basis, event.site, true);
    const Matrix a = ad.adjoint();
    if (event.model == PulseModel::Linearized)
        return Matrix::Identity(d, d) + event.alpha * (eip * ad - std::conj(eip) * a);
    // Exact displacement: exponential of the truncated anti-Hermitian generator.
    return Matrix(event.alpha * (eip * ad - std::conj(eip) * a)).exp();
}

SuperOperator pulse_superoperator(const PulseEvent& event, const StateBasis& basis) {
    const Matrix d = pulse_matrix(event, basis);
    return sandwich(d, d.adjoint());
}

Matrix apply_pulse(const Matrix& rho, const PulseEvent& event, const StateBasis& basis) {
    const Matrix d = pulse_matrix(event, basis);
    return d * rho * d.adjoint();
}

int pulse_k_max(const PulseEvent& event, const StateBasis& basis) {
    if (event.kind == PulseEvent::Kind::Spin || event.model == PulseModel::Linearized) return 2;
    // Exact displacement: D_{mn} carries e^{i phi (m-n)}, so the two-sided map
    // reaches |k| up to twice the excitation cap.
    return 2 * basis.excitation_cap();
}

SuperOperator pulse_harmonic_component(const PulseEvent& event, int k, const StateBasis& basis) {
    check_kind(event, basis);
    const int k_max = pulse_k_max(event, basis);
    if (std::abs(k) > k_max)
        throw std::out_of_range("pulse_harmonic_component: |k| exceeds the model band limit");

    const int d = basis.dim();
    const Matrix id = Matrix::Identity(d, d);

    if (event.kind == PulseEvent::Kind::Spin) {
        const Matrix sp = spin_operator(basis, event.site, SpinAxis::Plus);
        const Matrix sm = sp.adjoint();
        const double ab = event.alpha * event.beta;
        switch (k) {
            case +1: return SuperOperator(d, ab * (kron(id, sp) - kron(sp.transpose(), id)));
            case -1: return SuperOperator(d, ab * (kron(sm.transpose(), id) - kron(id, sm)));
            case 0:
                return SuperOperator(
                    d, Matrix(event.alpha * event.alpha * kron(id, id) +
                              event.beta * event.beta *
                                  (kron(sm.transpose(), sp) + kron(sp.transpose(), sm))));
            case +2: return SuperOperator(d, Matrix(-event.beta * event.beta * kron(sp.transpose(), sp)));
            case -2: return SuperOperator(d, Matrix(-event.beta * event.beta * kron(sm.transpose(), sm)));
            default: break;
        }
        throw std::logic_error("pulse_harmonic_component: unreachable");
    }

    if (event.model == PulseModel::Linearized) {
        const Matrix ad = ladder_operator(basis, event.site, true);
        const Matrix a = ad.adjoint();
        const double al = event.alpha;
        const double al2 = al * al;
        switch (k) {
            case +1: return SuperOperator(d, al * (kron(id, ad) - kron(ad.transpose(), id)));
            case -1: return SuperOperator(d, al * (kron(a.transpose(), id) - kron(id, a)));
            case 0:
                return SuperOperator(d, Matrix(kron(id, id) +
                                               al2 * (kron(a.transpose(), ad) + kron(ad.transpose(), a))));
            case +2: return SuperOperator(d, Matrix(-al2 * kron(ad.transpose(), ad)));
            case -2: return SuperOperator(d, Matrix(-al2 * kron(a.transpose(), a)));
            default: break;
        }
        throw std::logic_error("pulse_harmonic_component: unreachable");
    }

    // Exact displacement: project the phase dependence numerically. The map
    // is band-limited by the excitation cap, so a DFT over 2*k_max+1 phases
    // is exact on the truncated space.
    const int n_phases = 2 * k_max + 1;
    const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
    Matrix acc = Matrix::Zero(dd, dd);
    PulseEvent probe = event;
    for (int j = 0; j < n_phases; ++j) {
        const double phi = 2.0 * M_PI * j / n_phases;
        probe.phase = phi;
        acc += pulse_superoperator(probe, basis).matrix() * std::exp(-kImag * (k * phi));
    }
    return SuperOperator(d, Matrix(acc / static_cast<double>(n_phases)));
}

}  // namespace ionspec
