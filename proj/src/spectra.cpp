#include "ionspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fftw3.h>

namespace ionspec {

namespace {

// FFTW planning is not reentrant; transforms run on the orchestrating thread.
struct FftBuffer {
    fftw_complex* data = nullptr;
    explicit FftBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
        if (data == nullptr) throw std::bad_alloc();
    }
    ~FftBuffer() { fftw_free(data); }
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;
};

AxisSpec frequency_axis(const AxisSpec& time_axis, int n_padded, const std::string& label,
                        const std::string& unit) {
    const double d_omega = 2.0 * M_PI / (n_padded * time_axis.step);
    return AxisSpec{label, unit, n_padded, d_omega, -d_omega * (n_padded / 2)};
}

std::string frequency_unit(const std::string& time_unit) {
    // "1/nu_x" -> "nu_x"; anything else gets an explicit inverse.
    if (time_unit.rfind("1/", 0) == 0) return time_unit.substr(2);
    return "1/(" + time_unit + ")";
}

double parabolic_offset(double m_prev, double m_center, double m_next) {
    const double denom = m_prev - 2.0 * m_center + m_next;
    if (std::abs(denom) < 1e-300) return 0.0;
    double off = 0.5 * (m_prev - m_next) / denom;
    return std::clamp(off, -0.5, 0.5);
}

}  // namespace

double default_apodization(int n_samples, double dt) {
    return 3.0 / (n_samples * dt);
}

Spectrum2D fourier_2d(const SignalGrid2D& signal, double eta_a, double eta_b, int pad_factor,
                      TransformAxes axes) {
    if (signal.values.size() == 0) throw std::invalid_argument("fourier_2d: empty grid");
    if (eta_a < 0.0 || eta_b < 0.0) throw std::invalid_argument("fourier_2d: eta must be >= 0");
    if (pad_factor < 1) throw std::invalid_argument("fourier_2d: pad_factor must be >= 1");
    if (signal.axis_a.step <= 0.0 || (axes == TransformAxes::Both && signal.axis_b.step <= 0.0))
        throw std::invalid_argument("fourier_2d: time steps must be positive");

    const int na = signal.axis_a.n;
    const int nb = signal.axis_b.n;
    const int na_pad = na * pad_factor;
    const int nb_pad = axes == TransformAxes::Both ? nb * pad_factor : nb;

    // Window + zero-pad into a row-major buffer (axis a slowest).
    FftBuffer buf(static_cast<std::size_t>(na_pad) * nb_pad);
    std::fill_n(reinterpret_cast<double*>(buf.data), 2 * static_cast<std::size_t>(na_pad) * nb_pad, 0.0);
    for (int i = 0; i < na; ++i) {
        const double wa = std::exp(-eta_a * signal.axis_a.value(i));
        for (int k = 0; k < nb; ++k) {
            const double wb = axes == TransformAxes::Both
                                  ? std::exp(-eta_b * signal.axis_b.value(k))
                                  : 1.0;
            const Complex v = signal.values(i, k) * (wa * wb);
            auto& cell = buf.data[static_cast<std::size_t>(i) * nb_pad + k];
            cell[0] = v.real();
            cell[1] = v.imag();
        }
    }

    // FFTW_BACKWARD carries the e^{+i Omega t} kernel.
    fftw_plan plan = nullptr;
    if (axes == TransformAxes::Both) {
        plan = fftw_plan_dft_2d(na_pad, nb_pad, buf.data, buf.data, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
        // Batch of nb 1D transforms along axis a (stride nb_pad apart).
        const int n[] = {na_pad};
        plan = fftw_plan_many_dft(1, n, nb_pad, buf.data, nullptr, nb_pad, 1, buf.data, nullptr,
                                  nb_pad, 1, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fourier_2d: FFTW planning failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    Spectrum2D out;
    out.eta_a = eta_a;
    out.eta_b = axes == TransformAxes::Both ? eta_b : 0.0;
    out.pad_factor = pad_factor;
    out.axis_a = frequency_axis(signal.axis_a, na_pad, "Omega_" + signal.axis_a.label.substr(1),
                                frequency_unit(signal.axis_a.unit));
    out.axis_b = axes == TransformAxes::Both
                     ? frequency_axis(signal.axis_b, nb_pad, "Omega_" + signal.axis_b.label.substr(1),
                                      frequency_unit(signal.axis_b.unit))
                     : signal.axis_b;

    // fftshift the transformed axes and apply the dt normalization.
    const double scale = axes == TransformAxes::Both ? signal.axis_a.step * signal.axis_b.step
                                                     : signal.axis_a.step;
    out.values.resize(na_pad, nb_pad);
    for (int i = 0; i < na_pad; ++i) {
        const int src_i = (i + na_pad / 2) % na_pad;
        for (int k = 0; k < nb_pad; ++k) {
            const int src_k = axes == TransformAxes::Both ? (k + nb_pad / 2) % nb_pad : k;
            const auto& cell = buf.data[static_cast<std::size_t>(src_i) * nb_pad + src_k];
            out.values(i, k) = scale * Complex(cell[0], cell[1]);
        }
    }
    return out;
}

Spectrum2D arcsinh_rescale(const Spectrum2D& spectrum, double scale) {
    if (scale <= 0.0) throw std::invalid_argument("arcsinh_rescale: scale must be > 0");
    Spectrum2D out = spectrum;
    out.values = spectrum.values.unaryExpr(
        [scale](Complex v) { return Complex(std::asinh(std::abs(v) / scale), 0.0); });
    return out;
}

std::vector<Peak> find_peaks(const Spectrum2D& spectrum, double rel_threshold) {
    if (rel_threshold <= 0.0 || rel_threshold >= 1.0)
        throw std::invalid_argument("find_peaks: rel_threshold must be in (0,1)");

    const Eigen::MatrixXd mag = spectrum.values.cwiseAbs();
    const double global_max = mag.maxCoeff();
    if (global_max <= 0.0) return {};
    const double floor = rel_threshold * global_max;

    std::vector<Peak> peaks;
    for (int i = 1; i + 1 < mag.rows(); ++i) {
        for (int k = 1; k + 1 < mag.cols(); ++k) {
            const double m = mag(i, k);
            if (m < floor) continue;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di)
                for (int dk = -1; dk <= 1; ++dk) {
                    if (di == 0 && dk == 0) continue;
                    if (mag(i + di, k + dk) >= m) {
                        is_max = false;
                        break;
                    }
                }
            if (!is_max) continue;

            Peak p;
            p.index_a = i;
            p.index_b = k;
            p.magnitude = m;
            p.omega_a = spectrum.axis_a.value(i) +
                        spectrum.axis_a.step * parabolic_offset(mag(i - 1, k), m, mag(i + 1, k));
            p.omega_b = spectrum.axis_b.value(k) +
                        spectrum.axis_b.step * parabolic_offset(mag(i, k - 1), m, mag(i, k + 1));
            peaks.push_back(p);
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& l, const Peak& r) {
        if (l.magnitude != r.magnitude) return l.magnitude > r.magnitude;
        if (l.index_a != r.index_a) return l.index_a < r.index_a;
        return l.index_b < r.index_b;
    });
    return peaks;
}

std::optional<double> fwhm(const Spectrum2D& spectrum, const Peak& peak, int axis) {
    if (axis != 0 && axis != 1) throw std::invalid_argument("fwhm: axis must be 0 or 1");

    // Power profile through the peak along the requested axis.
    const Eigen::MatrixXd power = spectrum.values.cwiseAbs2();
    const int n = axis == 0 ? static_cast<int>(power.rows()) : static_cast<int>(power.cols());
    const int center = axis == 0 ? peak.index_a : peak.index_b;
    const int other = axis == 0 ? peak.index_b : peak.index_a;
    const double step = axis == 0 ? spectrum.axis_a.step : spectrum.axis_b.step;
    auto at = [&](int idx) { return axis == 0 ? power(idx, other) : power(other, idx); };

    if (center < 3 || center + 3 >= n) return std::nullopt;   // clearance

    // Interpolated apex of the power parabola as the half-max reference.
    const double off = parabolic_offset(at(center - 1), at(center), at(center + 1));
    const double apex = at(center) - 0.25 * (at(center - 1) - at(center + 1)) * off;
    const double half = 0.5 * apex;

    // Under-resolved line: both immediate neighbors already below half power.
    if (at(center - 1) < half && at(center + 1) < half) return std::nullopt;

    auto crossing = [&](int direction) -> std::optional<double> {
        for (int idx = center; idx + direction >= 0 && idx + direction < n; idx += direction) {
            const double p0 = at(idx);
            const double p1 = at(idx + direction);
            if (p1 < half && p0 >= half) {
                const double frac = (p0 - half) / (p0 - p1);
                return (idx + direction * frac) * step;
            }
            if (p1 >= p0 && idx != center) break;   // climbing into a neighboring line
        }
        return std::nullopt;
    };

    const auto left = crossing(-1);
    const auto right = crossing(+1);
    if (!left || !right) return std::nullopt;
    return *right - *left;
}

}  // namespace ionspec
