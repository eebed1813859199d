#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ionspec/grid.hpp"
#include "ionspec/spectra.hpp"

namespace ionspec {

// Full-precision scientific formatting (17 significant digits) so CSV
// payloads diff bit-identically across runs.
std::string format_double(double v);
std::string format_complex(Complex v);   // "<re>+<im>j", Python-parseable

// Grid CSV layout: the first row holds the axis-b values (corner cell names
// both axes), the first column the axis-a values; cells are complex literals.
void write_grid_csv(const std::filesystem::path& path, const AxisSpec& axis_a,
                    const AxisSpec& axis_b, const Matrix& values);

void write_signal_csv(const std::filesystem::path& path, const SignalGrid2D& signal);
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum2D& spectrum);

nlohmann::json peaks_to_json(const std::vector<Peak>& peaks);
nlohmann::json spectrum_meta(const Spectrum2D& spectrum);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace ionspec
