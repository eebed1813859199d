#include "ionspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ionspec {

std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(Complex v) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", v.real(), v.imag());
    return buf;
}

void write_grid_csv(const std::filesystem::path& path, const AxisSpec& axis_a,
                    const AxisSpec& axis_b, const Matrix& values) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());

    out << axis_a.label << "\\" << axis_b.label;
    for (int k = 0; k < axis_b.n; ++k) out << ',' << format_double(axis_b.value(k));
    out << '\n';
    for (int i = 0; i < axis_a.n; ++i) {
        out << format_double(axis_a.value(i));
        for (int k = 0; k < axis_b.n; ++k) out << ',' << format_complex(values(i, k));
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_signal_csv(const std::filesystem::path& path, const SignalGrid2D& signal) {
    write_grid_csv(path, signal.axis_a, signal.axis_b, signal.values);
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum2D& spectrum) {
    write_grid_csv(path, spectrum.axis_a, spectrum.axis_b, spectrum.values);
}

nlohmann::json peaks_to_json(const std::vector<Peak>& peaks) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& p : peaks) {
        nlohmann::json j;
        j["omega_a"] = p.omega_a;
        j["omega_b"] = p.omega_b;
        j["magnitude"] = p.magnitude;
        j["index_a"] = p.index_a;
        j["index_b"] = p.index_b;
        j["fwhm_a"] = p.fwhm_a ? nlohmann::json(*p.fwhm_a) : nlohmann::json();
        j["fwhm_b"] = p.fwhm_b ? nlohmann::json(*p.fwhm_b) : nlohmann::json();
        list.push_back(std::move(j));
    }
    return list;
}

nlohmann::json spectrum_meta(const Spectrum2D& spectrum) {
    nlohmann::json j;
    j["axis_a"] = {{"label", spectrum.axis_a.label}, {"unit", spectrum.axis_a.unit},
                   {"n", spectrum.axis_a.n},         {"step", spectrum.axis_a.step},
                   {"start", spectrum.axis_a.start}};
    j["axis_b"] = {{"label", spectrum.axis_b.label}, {"unit", spectrum.axis_b.unit},
                   {"n", spectrum.axis_b.n},         {"step", spectrum.axis_b.step},
                   {"start", spectrum.axis_b.start}};
    j["eta_a"] = spectrum.eta_a;
    j["eta_b"] = spectrum.eta_b;
    j["pad_factor"] = spectrum.pad_factor;
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace ionspec
