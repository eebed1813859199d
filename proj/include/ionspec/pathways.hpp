#pragma once

#include <array>

#include "ionspec/dynamics.hpp"
#include "ionspec/grid.hpp"
#include "ionspec/phase_cycle.hpp"
#include "ionspec/pulses.hpp"
#include "ionspec/sequence.hpp"

namespace ionspec {

enum class EvaluationMode { Direct, PhaseCycled };

// The three four-pulse diagrams with signature (+1,+1,-1,-1). Variant 1 is
// the diagram whose t3 interval carries a single-quantum coherence; variants
// 2 and 3 pass through the double-excitation manifold during t3 and end in a
// double- resp. single-excitation population. Sum adds all three with their
// diagram signs (each bra-side de-excitation contributes a factor -1, which
// the harmonic-component calculus produces automatically).
enum class DqcVariant { Sum = 0, Dqc1 = 1, Dqc2 = 2, Dqc3 = 3 };

// Normalized pathway amplitudes (pulse prefactors stripped). rho0 must be the
// ground state; the closed-form chains below assume it.
Complex direct_sqc(int site_first, int site_second, int readout_site, double t1, double t2,
                   const Propagator& prop, const Matrix& rho0, const StateBasis& basis);

Complex direct_dqc(DqcVariant variant, const std::array<int, 4>& pulse_sites, int readout_site,
                   double t1, double t3, const Propagator& prop, const Matrix& rho0,
                   const StateBasis& basis, double t2 = 0.0, double t4 = 0.0);

Complex direct_spin_sqc(int pulse_site, int readout_site, double t1, double t2,
                        const Propagator& prop, const Matrix& rho0, const StateBasis& basis);

// Experiment descriptors for 2D delay scans.

struct SqcExperiment {
    int site_first = 0;
    int site_second = 0;
    int readout_site = 0;
    double alpha = 0.1;
    PulseModel pulse_model = PulseModel::Linearized;
};

struct DqcExperiment {
    std::array<int, 4> pulse_sites{0, 0, 0, 0};
    int readout_site = 0;
    double alpha = 0.1;
    PulseModel pulse_model = PulseModel::Linearized;
    DqcVariant variant = DqcVariant::Sum;
    double t2 = 0.0;   // fixed delay between pulses 2 and 3
    double t4 = 0.0;   // fixed delay between pulse 4 and readout
};

struct SpinSqcExperiment {
    int pulse_site = 0;
    int readout_site = 0;
    double pulse_beta = 0.1;
};

struct ScanOptions {
    EvaluationMode mode = EvaluationMode::Direct;
    int steps_per_pulse = 3;        // phase grid size L per cycled pulse
    bool fixed_last_phase = true;   // forced off for spin scans (no number selection rule)
    int threads = 1;
};

// 2D scans. Direct mode evaluates the pathway chains; phase-cycled mode
// emulates the full pulse protocol on the phase grid, extracts the signature
// coefficient, and divides out the leading pulse-amplitude power so both
// modes return the same normalized pathway signal (up to the O(alpha^2)
// relative cycling contamination).
SignalGrid2D scan_sqc(const SqcExperiment& exp, const GridSpec& grid, const Propagator& prop,
                      const Matrix& rho0, const StateBasis& basis, const ScanOptions& options);

SignalGrid2D scan_dqc(const DqcExperiment& exp, const GridSpec& grid, const Propagator& prop,
                      const Matrix& rho0, const StateBasis& basis, const ScanOptions& options);

SignalGrid2D scan_spin_sqc(const SpinSqcExperiment& exp, const GridSpec& grid,
                           const Propagator& prop, const Matrix& rho0, const StateBasis& basis,
                           const ScanOptions& options);

}  // namespace ionspec
