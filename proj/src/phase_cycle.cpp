#include "ionspec/phase_cycle.hpp"

#include <cmath>
#include <stdexcept>

namespace ionspec {

long PhaseCycleScheme::total_samples() const {
    long total = 1;
    for (int p = 0; p < n_cycled(); ++p) total *= steps_per_pulse;
    return total;
}

std::vector<std::vector<double>> phase_grid(const PhaseCycleScheme& scheme) {
    if (scheme.signature.empty()) throw std::invalid_argument("phase_grid: empty signature");
    if (scheme.steps_per_pulse < 2)
        throw std::invalid_argument("phase_grid: steps_per_pulse must be >= 2");

    const int n_pulses = scheme.n_pulses();
    const int n_cycled = scheme.n_cycled();
    const long total = scheme.total_samples();

    std::vector<std::vector<double>> grid;
    grid.reserve(static_cast<std::size_t>(total));
    for (long flat = 0; flat < total; ++flat) {
        std::vector<double> phases(static_cast<std::size_t>(n_pulses), 0.0);
        long rest = flat;
        for (int p = n_cycled - 1; p >= 0; --p) {
            const long j = rest % scheme.steps_per_pulse;
            rest /= scheme.steps_per_pulse;
            phases[static_cast<std::size_t>(p)] = 2.0 * M_PI * static_cast<double>(j) /
                                                  static_cast<double>(scheme.steps_per_pulse);
        }
        grid.push_back(std::move(phases));
    }
    return grid;
}

Complex phase_cycle_extract(const std::vector<Complex>& samples, const PhaseCycleScheme& scheme) {
    const auto grid = phase_grid(scheme);
    if (samples.size() != grid.size())
        throw std::invalid_argument("phase_cycle_extract: incomplete phase grid");

    Complex acc = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double arg = 0.0;
        for (int p = 0; p < scheme.n_cycled(); ++p)
            arg += scheme.signature[static_cast<std::size_t>(p)] * grid[g][static_cast<std::size_t>(p)];
        acc += samples[g] * std::exp(Complex(0.0, -arg));
    }
    return acc / static_cast<double>(grid.size());
}

}  // namespace ionspec
