#pragma once

#include <optional>
#include <vector>

#include "ionspec/grid.hpp"

namespace ionspec {

// Discrete one-sided Fourier image of a delay grid, kernel e^{+i Omega t}:
// a time-domain factor e^{-i w t} peaks at Omega = +w. Transformed axes are
// centered (fftshifted), Omega in [-pi/dt, pi/dt). Normalization carries the
// time steps, S(Omega) ~ dt * sum_k s(t_k) e^{+i Omega t_k}, so windowed
// time-domain energy sum|s|^2 dt equals spectral energy sum|S|^2 dOmega/(2 pi)
// per transformed axis.
struct Spectrum2D {
    AxisSpec axis_a;
    AxisSpec axis_b;
    Matrix values;
    double eta_a = 0.0;   // exponential window rates used before transforming
    double eta_b = 0.0;
    int pad_factor = 1;
};

enum class TransformAxes { Both, FirstOnly };

// Apodizes with e^{-eta t} per axis, zero-pads by pad_factor, and transforms.
// FirstOnly keeps axis b in the time domain (mixed representation).
Spectrum2D fourier_2d(const SignalGrid2D& signal, double eta_a, double eta_b, int pad_factor,
                      TransformAxes axes = TransformAxes::Both);

// Display rescaling |v| -> arcsinh(|v|/scale); never applied before analysis.
Spectrum2D arcsinh_rescale(const Spectrum2D& spectrum, double scale);

struct Peak {
    double omega_a = 0.0;   // parabolic-refined positions
    double omega_b = 0.0;
    double magnitude = 0.0;
    int index_a = 0;
    int index_b = 0;
    std::optional<double> fwhm_a;
    std::optional<double> fwhm_b;
};

// Local maxima of |S| over 8-neighborhoods above rel_threshold * max|S|,
// positions refined by per-axis parabolic interpolation, sorted by magnitude
// descending (ties by indices).
std::vector<Peak> find_peaks(const Spectrum2D& spectrum, double rel_threshold);

// Full width at half maximum of the power profile |S|^2 through the peak
// along the chosen axis (0 = a, 1 = b). For a Lorentzian line of decay rate
// g this equals 2 g, so a pure tone under an eta window reads 2 eta.
// nullopt when the half-maximum crossings are not bracketed inside the grid
// or the line is narrower than the bin spacing resolves.
std::optional<double> fwhm(const Spectrum2D& spectrum, const Peak& peak, int axis);

// Default window rate: eta = 3 / t_max keeps the one-sided transform of an
// undamped signal convergent with a quantifiable 2 eta width floor.
double default_apodization(int n_samples, double dt);

}  // namespace ionspec
