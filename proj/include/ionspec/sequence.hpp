#pragma once

#include <vector>

#include "ionspec/dynamics.hpp"
#include "ionspec/pulses.hpp"

namespace ionspec {

enum class ReadoutKind { PhononA, SpinZ };

// Readout observable at `site`. Phonon kind: the sideband-mapped population
// observable A = sum_n sin^2(sqrt(n) pi/2) |n><n| in the local occupation of
// the readout site; spin kind: sigma_z.
Matrix readout_observable(const StateBasis& basis, int site, ReadoutKind kind);

// Ordered impulsive events with an evolution delay after each one; the
// readout expectation is taken after the last delay.
struct PulseSequence {
    std::vector<PulseEvent> events;
    std::vector<double> delays;   // same length as events, each >= 0
    int readout_site = 0;
    ReadoutKind readout_kind = ReadoutKind::PhononA;
};

struct SequenceResult {
    double value = 0.0;        // Re Tr{A rho_final}
    double imag_part = 0.0;    // bookkeeping; must stay at rounding level
};

// S = Tr{A G(t_m) V_m ... G(t_1) V_1 [rho0]} with the supplied per-event
// phases overriding the ones stored in the events.
SequenceResult run_sequence(const Matrix& rho0, const PulseSequence& seq, const Propagator& prop,
                            const StateBasis& basis, const std::vector<double>& phases);

}  // namespace ionspec
