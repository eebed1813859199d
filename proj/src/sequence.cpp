#include "ionspec/sequence.hpp"

#include <cmath>
#include <stdexcept>

#include "ionspec/operators.hpp"

namespace ionspec {

Matrix readout_observable(const StateBasis& basis, int site, ReadoutKind kind) {
    if (kind == ReadoutKind::PhononA) {
        if (basis.kind() != BasisKind::Phonon)
            throw std::invalid_argument("readout_observable: phonon readout on non-phonon basis");
        return site_diagonal_operator(basis, site, [](int n) {
            const double s = std::sin(std::sqrt(static_cast<double>(n)) * M_PI / 2.0);
            return s * s;
        });
    }
    if (basis.kind() != BasisKind::Spin)
        throw std::invalid_argument("readout_observable: spin readout on non-spin basis");
    return spin_operator(basis, site, SpinAxis::Z);
}

SequenceResult run_sequence(const Matrix& rho0, const PulseSequence& seq, const Propagator& prop,
                            const StateBasis& basis, const std::vector<double>& phases) {
    if (seq.delays.size() != seq.events.size())
        throw std::invalid_argument("run_sequence: one delay per event required");
    if (phases.size() != seq.events.size())
        throw std::invalid_argument("run_sequence: one phase per event required");
    for (double t : seq.delays)
        if (t < 0.0) throw std::invalid_argument("run_sequence: negative delay");

    Matrix rho = rho0;
    for (std::size_t p = 0; p < seq.events.size(); ++p) {
        PulseEvent event = seq.events[p];
        event.phase = phases[p];
        rho = apply_pulse(rho, event, basis);
        if (seq.delays[p] > 0.0) rho = prop.evolve(seq.delays[p], rho);
    }

    const Matrix obs = readout_observable(basis, seq.readout_site, seq.readout_kind);
    const Complex value = (obs * rho).trace();
    return SequenceResult{value.real(), value.imag()};
}

}  // namespace ionspec
