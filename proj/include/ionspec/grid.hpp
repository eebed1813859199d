#pragma once

#include <string>

#include "ionspec/types.hpp"

namespace ionspec {

struct AxisSpec {
    std::string label;   // "t1", "Omega_2", ...
    std::string unit;    // "1/nu_x", "nu_x", "1/Omega", "Omega"
    int n = 0;
    double step = 0.0;
    double start = 0.0;

    double value(int index) const { return start + step * index; }
};

// Scan grid: delay t_a = i * dt_a (i = 0..n_a-1) against t_b = k * dt_b.
struct GridSpec {
    int n_a = 0;
    double dt_a = 0.0;
    int n_b = 0;
    double dt_b = 0.0;
};

// Complex-valued signal over a delay-delay grid; values(i, k) belongs to
// (axis_a.value(i), axis_b.value(k)).
struct SignalGrid2D {
    AxisSpec axis_a;
    AxisSpec axis_b;
    Matrix values;
};

}  // namespace ionspec
