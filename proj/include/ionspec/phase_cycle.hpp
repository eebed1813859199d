#pragma once

#include <vector>

#include "ionspec/types.hpp"

namespace ionspec {

// Discrete phase-cycling protocol: every cycled pulse phase is scanned over
// steps_per_pulse equidistant values 2 pi j / L, and the coefficient of the
// target signature is recovered by an inverse discrete Fourier transform.
//
// With fixed_last_phase the final pulse is held at phase 0 and only the
// leading pulses are cycled. That shortcut is exact only when every surviving
// pathway has zero net signature (number-diagonal readout combined with
// number-conserving dynamics); experiments without that selection rule, such
// as the Molmer-Sorensen spin protocol, must cycle all pulses.
struct PhaseCycleScheme {
    std::vector<int> signature;    // one entry per pulse, e.g. {+1,-1}
    int steps_per_pulse = 3;       // L; 3 suffices for perturbative pulses
    bool fixed_last_phase = true;

    int n_pulses() const { return static_cast<int>(signature.size()); }
    int n_cycled() const { return n_pulses() - (fixed_last_phase ? 1 : 0); }
    long total_samples() const;
};

// Product grid of cycled phases in canonical order: the first cycled pulse is
// the slowest index, the last the fastest. Each entry has n_pulses()
// phases (fixed pulses at 0).
std::vector<std::vector<double>> phase_grid(const PhaseCycleScheme& scheme);

// Inverse-DFT coefficient at the scheme's signature. `samples` must follow
// the phase_grid ordering and cover the whole grid.
Complex phase_cycle_extract(const std::vector<Complex>& samples, const PhaseCycleScheme& scheme);

}  // namespace ionspec
