#pragma once

#include "ionspec/basis.hpp"
#include "ionspec/superop.hpp"
#include "ionspec/types.hpp"

namespace ionspec {

enum class PulseModel { Linearized, Exact };

// One impulsive interaction event.
//
// Phonon pulses realize the displacement D = I + alpha e^{i phi} a^dag
//   - alpha e^{-i phi} a (linearized) or the exponential of the truncated
//   displacement generator (exact), acting as rho -> D rho D^dag.
// Spin pulses realize the exactly unitary
//   U = alpha I + beta (e^{i phi} sigma_+ - e^{-i phi} sigma_-),
//   alpha^2 + beta^2 = 1 with real amplitudes.
struct PulseEvent {
    enum class Kind { Phonon, Spin } kind = Kind::Phonon;
    int site = 0;
    double phase = 0.0;
    double alpha = 0.0;   // phonon displacement amplitude / spin identity weight
    double beta = 0.0;    // spin flip amplitude
    PulseModel model = PulseModel::Linearized;

    static PulseEvent phonon(int site, double phase, double alpha,
                             PulseModel model = PulseModel::Linearized);
    static PulseEvent spin(int site, double phase, double beta);

    // Weight carried by the first-harmonic (k = +-1) component: alpha for
    // phonon pulses, alpha*beta for spin pulses. Pathway extractions are
    // normalized by products of powers of this weight.
    double first_harmonic_weight() const;
};

// The one-sided interaction matrix (D or U) on the given basis.
Matrix pulse_matrix(const PulseEvent& event, const StateBasis& basis);

// rho -> D rho D^dag as a dense superoperator. Linearized pulses are not
// renormalized; their trace defect is O(alpha^2) by construction.
SuperOperator pulse_superoperator(const PulseEvent& event, const StateBasis& basis);
Matrix apply_pulse(const Matrix& rho, const PulseEvent& event, const StateBasis& basis);

// Largest phase harmonic the pulse map generates: 2 for linearized phonon and
// spin pulses (the sandwich terms at e^{+-2 i phi}), twice the excitation cap
// for exact displacements. Phase-cycling grids are sized by the effective
// band limit of the surviving pathways (1 for perturbative pulses), not by
// this bound; see PhaseCycleScheme.
int pulse_k_max(const PulseEvent& event, const StateBasis& basis);

// Coefficient superoperator of e^{i k phi} in the pulse map, so that
// sum_k component_k e^{i k phi} reassembles the full pulse superoperator
// (exactly for linearized/spin pulses). The k = +-1 components are the
// building blocks of the direct pathway evaluations.
SuperOperator pulse_harmonic_component(const PulseEvent& event, int k, const StateBasis& basis);

}  // namespace ionspec
