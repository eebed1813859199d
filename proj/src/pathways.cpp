#include "ionspec/pathways.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "ionspec/operators.hpp"
#include "ionspec/parallel.hpp"

namespace ionspec {

namespace {

void require_ground_state(const Matrix& rho0) {
    Matrix expected = Matrix::Zero(rho0.rows(), rho0.cols());
    expected(0, 0) = 1.0;
    if ((rho0 - expected).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("direct pathway: rho0 must be the ground state");
}

struct ScanTerm {
    Complex weight;
    int col_map;      // index into col_maps, -1 for identity
    int row_family;   // index into row_seeds
};

// S(i,k) = sum_t weight_t * w_{t,k}^H M_t x_i with x_i = Gcol^i x0 and
// w_{t,k}^H = seed_t^H Grow^k. Column recurrences are serial; the per-column
// contractions are a pure map over the first axis, partitioned across
// workers and merged by index, so results do not depend on the worker count.
Matrix scan_engine(const Matrix& g_col, const Matrix& g_row, const Vector& x0,
                   const std::vector<Matrix>& col_maps, const std::vector<Vector>& row_seeds,
                   const std::vector<ScanTerm>& terms, int n_a, int n_b, int threads) {
    const Eigen::Index dd = x0.size();

    Matrix columns(dd, n_a);
    columns.col(0) = x0;
    for (int i = 1; i < n_a; ++i) columns.col(i) = g_col * columns.col(i - 1);

    std::vector<Matrix> mapped;
    mapped.reserve(col_maps.size());
    for (const auto& m : col_maps) mapped.push_back(m * columns);

    std::vector<Matrix> rows;   // one (n_b x dd) block per row family
    rows.reserve(row_seeds.size());
    const Matrix g_row_adj = g_row.adjoint();
    for (const auto& seed : row_seeds) {
        Matrix block(n_b, dd);
        Vector w = seed;
        block.row(0) = w.adjoint();
        for (int k = 1; k < n_b; ++k) {
            w = g_row_adj * w;
            block.row(k) = w.adjoint();
        }
        rows.push_back(std::move(block));
    }

    Matrix signal = Matrix::Zero(n_a, n_b);
    parallel_for(n_a, threads, [&](int i) {
        for (const auto& term : terms) {
            const auto& y = term.col_map < 0 ? columns.col(i)
                                             : mapped[static_cast<std::size_t>(term.col_map)].col(i);
            signal.row(i) += term.weight * (rows[static_cast<std::size_t>(term.row_family)] * y).transpose();
        }
    });
    return signal;
}

SignalGrid2D make_grid(const GridSpec& grid, const std::string& label_a, const std::string& label_b,
                       const std::string& time_unit, Matrix values) {
    if (grid.n_a < 1 || grid.n_b < 1)
        throw std::invalid_argument("scan: grid must have at least one point per axis");
    SignalGrid2D out;
    out.axis_a = AxisSpec{label_a, time_unit, grid.n_a, grid.dt_a, 0.0};
    out.axis_b = AxisSpec{label_b, time_unit, grid.n_b, grid.dt_b, 0.0};
    out.values = std::move(values);
    return out;
}

void check_grid(const GridSpec& grid) {
    if (grid.n_a < 1 || grid.n_b < 1) throw std::invalid_argument("scan: empty grid");
    if ((grid.n_a > 1 && grid.dt_a <= 0.0) || (grid.n_b > 1 && grid.dt_b <= 0.0))
        throw std::invalid_argument("scan: grid steps must be positive");
}

double step_or_unit(const GridSpec& g, bool first) {
    // A 1x1 grid may come with zero steps; the propagator still needs a
    // nonnegative time for its cached step.
    const double dt = first ? g.dt_a : g.dt_b;
    return dt > 0.0 ? dt : 1.0;
}

}  // namespace

Complex direct_sqc(int site_first, int site_second, int readout_site, double t1, double t2,
                   const Propagator& prop, const Matrix& rho0, const StateBasis& basis) {
    require_ground_state(rho0);
    const Matrix ad1 = ladder_operator(basis, site_first, true);
    const Matrix a2 = ladder_operator(basis, site_second, false);
    const Matrix obs = readout_observable(basis, readout_site, ReadoutKind::PhononA);

    Matrix x = ad1 * rho0;
    if (t1 > 0.0) x = prop.evolve(t1, x);
    x = x * a2;
    if (t2 > 0.0) x = prop.evolve(t2, x);
    return (obs * x).trace();
}

Complex direct_dqc(DqcVariant variant, const std::array<int, 4>& pulse_sites, int readout_site,
                   double t1, double t3, const Propagator& prop, const Matrix& rho0,
                   const StateBasis& basis, double t2, double t4) {
    require_ground_state(rho0);
    const Matrix ad1 = ladder_operator(basis, pulse_sites[0], true);
    const Matrix ad2 = ladder_operator(basis, pulse_sites[1], true);
    const Matrix a3 = ladder_operator(basis, pulse_sites[2], false);
    const Matrix a4 = ladder_operator(basis, pulse_sites[3], false);
    const Matrix obs = readout_observable(basis, readout_site, ReadoutKind::PhononA);

    Matrix x = ad1 * rho0;
    if (t1 > 0.0) x = prop.evolve(t1, x);
    x = ad2 * x;
    if (t2 > 0.0) x = prop.evolve(t2, x);

    auto finish = [&](Matrix z) {
        if (t4 > 0.0) z = prop.evolve(t4, z);
        return (obs * z).trace();
    };

    Complex total = 0.0;
    if (variant == DqcVariant::Dqc1 || variant == DqcVariant::Sum) {
        Matrix z = a3 * x;
        if (t3 > 0.0) z = prop.evolve(t3, z);
        total -= finish(z * a4);
    }
    if (variant != DqcVariant::Dqc1) {
        Matrix z = x * a3;
        if (t3 > 0.0) z = prop.evolve(t3, z);
        if (variant == DqcVariant::Dqc2 || variant == DqcVariant::Sum) total += finish(z * a4);
        if (variant == DqcVariant::Dqc3 || variant == DqcVariant::Sum) total -= finish(a4 * z);
    }
    return total;
}

Complex direct_spin_sqc(int pulse_site, int readout_site, double t1, double t2,
                        const Propagator& prop, const Matrix& rho0, const StateBasis& basis) {
    require_ground_state(rho0);
    const Matrix sp = spin_operator(basis, pulse_site, SpinAxis::Plus);
    const Matrix sm = sp.adjoint();
    const Matrix obs = readout_observable(basis, readout_site, ReadoutKind::SpinZ);

    // Full +-1 harmonic components: the Molmer-Sorensen dynamics does not
    // conserve excitation number, so neither commutator term can be dropped.
    Matrix x = sp * rho0 - rho0 * sp;
    if (t1 > 0.0) x = prop.evolve(t1, x);
    x = x * sm - sm * x;
    if (t2 > 0.0) x = prop.evolve(t2, x);
    return (obs * x).trace();
}

SignalGrid2D scan_sqc(const SqcExperiment& exp, const GridSpec& grid, const Propagator& prop,
                      const Matrix& rho0, const StateBasis& basis, const ScanOptions& options) {
    check_grid(grid);
    require_ground_state(rho0);
    const Matrix& g_col = prop.step(step_or_unit(grid, true));
    const Matrix& g_row = prop.step(step_or_unit(grid, false));
    const Matrix obs = readout_observable(basis, exp.readout_site, ReadoutKind::PhononA);

    Matrix values;
    if (options.mode == EvaluationMode::Direct) {
        const Matrix ad1 = ladder_operator(basis, exp.site_first, true);
        std::vector<Matrix> col_maps{right_multiply(ladder_operator(basis, exp.site_second, false)).matrix()};
        std::vector<Vector> row_seeds{vectorize(obs)};
        values = scan_engine(g_col, g_row, vectorize(Matrix(ad1 * rho0)), col_maps, row_seeds,
                             {ScanTerm{1.0, 0, 0}}, grid.n_a, grid.n_b, options.threads);
    } else {
        const PhaseCycleScheme scheme{{+1, -1}, options.steps_per_pulse, options.fixed_last_phase};
        const auto tuples = phase_grid(scheme);
        const double norm = static_cast<double>(tuples.size());
        const PulseEvent proto = PulseEvent::phonon(0, 0.0, exp.alpha, exp.pulse_model);

        values = Matrix::Zero(grid.n_a, grid.n_b);
        // Group the tuples by first phase so each group shares one column
        // recurrence; the extraction weight folds into the term weights.
        std::map<double, std::vector<std::size_t>> groups;
        for (std::size_t g = 0; g < tuples.size(); ++g) groups[tuples[g][0]].push_back(g);
        for (const auto& [phi1, members] : groups) {
            PulseEvent first = proto;
            first.site = exp.site_first;
            first.phase = phi1;
            const Vector x0 = pulse_superoperator(first, basis).matrix() * vectorize(rho0);

            std::vector<Matrix> col_maps;
            std::vector<ScanTerm> terms;
            for (std::size_t g : members) {
                PulseEvent second = proto;
                second.site = exp.site_second;
                second.phase = tuples[g][1];
                col_maps.push_back(pulse_superoperator(second, basis).matrix());
                const Complex w = std::exp(-kImag * (scheme.signature[0] * tuples[g][0] +
                                                     scheme.signature[1] * tuples[g][1])) / norm;
                terms.push_back(ScanTerm{w, static_cast<int>(col_maps.size()) - 1, 0});
            }
            values += scan_engine(g_col, g_row, x0, col_maps, {vectorize(obs)}, terms, grid.n_a,
                                  grid.n_b, options.threads);
        }
        values /= exp.alpha * exp.alpha;   // leading-order pathway normalization
    }
    return make_grid(grid, "t1", "t2", "1/nu_x", std::move(values));
}

SignalGrid2D scan_dqc(const DqcExperiment& exp, const GridSpec& grid, const Propagator& prop,
                      const Matrix& rho0, const StateBasis& basis, const ScanOptions& options) {
    check_grid(grid);
    require_ground_state(rho0);
    const Matrix& g_col = prop.step(step_or_unit(grid, true));
    const Matrix& g_row = prop.step(step_or_unit(grid, false));
    const Matrix obs = readout_observable(basis, exp.readout_site, ReadoutKind::PhononA);
    const Matrix& g_t4 = prop.step(exp.t4);

    Matrix values;
    if (options.mode == EvaluationMode::Direct) {
        const Matrix ad1 = ladder_operator(basis, exp.pulse_sites[0], true);
        const Matrix left_ad2 = left_multiply(ladder_operator(basis, exp.pulse_sites[1], true)).matrix();
        const Matrix a3 = ladder_operator(basis, exp.pulse_sites[2], false);
        const Matrix a4 = ladder_operator(basis, exp.pulse_sites[3], false);
        const Matrix& g_t2 = prop.step(exp.t2);

        // Columns carry G(t1); the second pulse and the fixed t2 delay fold
        // into the column maps, the fixed t4 delay into the row seeds.
        const Matrix bra_map = Matrix(g_t2 * left_ad2);
        std::vector<Matrix> col_maps{
            Matrix(right_multiply(a3).matrix() * bra_map),   // t3 interval in the double manifold
            Matrix(left_multiply(a3).matrix() * bra_map),    // t3 interval in the single manifold
        };
        const Vector row_after_right = (g_t4 * right_multiply(a4).matrix()).adjoint() * vectorize(obs);
        const Vector row_after_left = (g_t4 * left_multiply(a4).matrix()).adjoint() * vectorize(obs);
        std::vector<Vector> row_seeds{row_after_right, row_after_left};

        std::vector<ScanTerm> terms;
        if (exp.variant == DqcVariant::Dqc1 || exp.variant == DqcVariant::Sum)
            terms.push_back(ScanTerm{-1.0, 1, 0});
        if (exp.variant == DqcVariant::Dqc2 || exp.variant == DqcVariant::Sum)
            terms.push_back(ScanTerm{+1.0, 0, 0});
        if (exp.variant == DqcVariant::Dqc3 || exp.variant == DqcVariant::Sum)
            terms.push_back(ScanTerm{-1.0, 0, 1});

        values = scan_engine(g_col, g_row, vectorize(Matrix(ad1 * rho0)), col_maps, row_seeds,
                             terms, grid.n_a, grid.n_b, options.threads);
    } else {
        if (exp.variant != DqcVariant::Sum)
            throw std::invalid_argument("scan_dqc: phase cycling yields the diagram sum only");
        const PhaseCycleScheme scheme{{+1, +1, -1, -1}, options.steps_per_pulse,
                                      options.fixed_last_phase};
        const auto tuples = phase_grid(scheme);
        const double norm = static_cast<double>(tuples.size());
        const PulseEvent proto = PulseEvent::phonon(0, 0.0, exp.alpha, exp.pulse_model);
        const Matrix& g_t2 = prop.step(exp.t2);

        auto event_at = [&](int pulse, double phase) {
            PulseEvent e = proto;
            e.site = exp.pulse_sites[static_cast<std::size_t>(pulse)];
            e.phase = phase;
            return e;
        };

        // Row seeds depend on phi4 only; build one family per distinct value.
        std::map<double, int> phi4_family;
        std::vector<Vector> row_seeds;
        for (const auto& tuple : tuples) {
            if (phi4_family.count(tuple[3]) != 0U) continue;
            const Matrix v4 = pulse_superoperator(event_at(3, tuple[3]), basis).matrix();
            phi4_family[tuple[3]] = static_cast<int>(row_seeds.size());
            row_seeds.push_back((g_t4 * v4).adjoint() * vectorize(obs));
        }

        values = Matrix::Zero(grid.n_a, grid.n_b);
        std::map<double, std::vector<std::size_t>> groups;
        for (std::size_t g = 0; g < tuples.size(); ++g) groups[tuples[g][0]].push_back(g);
        for (const auto& [phi1, members] : groups) {
            const Vector x0 =
                pulse_superoperator(event_at(0, phi1), basis).matrix() * vectorize(rho0);
            std::vector<Matrix> col_maps;
            std::vector<ScanTerm> terms;
            for (std::size_t g : members) {
                const auto& tuple = tuples[g];
                const Matrix v2 = pulse_superoperator(event_at(1, tuple[1]), basis).matrix();
                const Matrix v3 = pulse_superoperator(event_at(2, tuple[2]), basis).matrix();
                col_maps.push_back(Matrix(v3 * g_t2 * v2));
                double arg = 0.0;
                for (int p = 0; p < 4; ++p) arg += scheme.signature[static_cast<std::size_t>(p)] * tuple[static_cast<std::size_t>(p)];
                terms.push_back(ScanTerm{std::exp(-kImag * arg) / norm,
                                         static_cast<int>(col_maps.size()) - 1,
                                         phi4_family.at(tuple[3])});
            }
            values += scan_engine(g_col, g_row, x0, col_maps, row_seeds, terms, grid.n_a, grid.n_b,
                                  options.threads);
        }
        values /= std::pow(exp.alpha, 4);
    }
    return make_grid(grid, "t1", "t3", "1/nu_x", std::move(values));
}

SignalGrid2D scan_spin_sqc(const SpinSqcExperiment& exp, const GridSpec& grid,
                           const Propagator& prop, const Matrix& rho0, const StateBasis& basis,
                           const ScanOptions& options) {
    check_grid(grid);
    require_ground_state(rho0);
    const Matrix& g_col = prop.step(step_or_unit(grid, true));
    const Matrix& g_row = prop.step(step_or_unit(grid, false));
    const Matrix obs = readout_observable(basis, exp.readout_site, ReadoutKind::SpinZ);

    Matrix values;
    if (options.mode == EvaluationMode::Direct) {
        const Matrix sp = spin_operator(basis, exp.pulse_site, SpinAxis::Plus);
        const Matrix sm = sp.adjoint();
        const Vector x0 = vectorize(Matrix(sp * rho0 - rho0 * sp));
        std::vector<Matrix> col_maps{right_multiply(sm).matrix() - left_multiply(sm).matrix()};
        values = scan_engine(g_col, g_row, x0, col_maps, {vectorize(obs)}, {ScanTerm{1.0, 0, 0}},
                             grid.n_a, grid.n_b, options.threads);
    } else {
        // No number-selection rule under H_MS: all pulses must be cycled.
        const PhaseCycleScheme scheme{{+1, -1}, options.steps_per_pulse, false};
        const auto tuples = phase_grid(scheme);
        const double norm = static_cast<double>(tuples.size());

        values = Matrix::Zero(grid.n_a, grid.n_b);
        std::map<double, std::vector<std::size_t>> groups;
        for (std::size_t g = 0; g < tuples.size(); ++g) groups[tuples[g][0]].push_back(g);
        for (const auto& [phi1, members] : groups) {
            const PulseEvent first = PulseEvent::spin(exp.pulse_site, phi1, exp.pulse_beta);
            const Vector x0 = pulse_superoperator(first, basis).matrix() * vectorize(rho0);
            std::vector<Matrix> col_maps;
            std::vector<ScanTerm> terms;
            for (std::size_t g : members) {
                const PulseEvent second =
                    PulseEvent::spin(exp.pulse_site, tuples[g][1], exp.pulse_beta);
                col_maps.push_back(pulse_superoperator(second, basis).matrix());
                const Complex w = std::exp(-kImag * (scheme.signature[0] * tuples[g][0] +
                                                     scheme.signature[1] * tuples[g][1])) / norm;
                terms.push_back(ScanTerm{w, static_cast<int>(col_maps.size()) - 1, 0});
            }
            values += scan_engine(g_col, g_row, x0, col_maps, {vectorize(obs)}, terms, grid.n_a,
                                  grid.n_b, options.threads);
        }
        const double w1 = PulseEvent::spin(exp.pulse_site, 0.0, exp.pulse_beta).first_harmonic_weight();
        values /= w1 * w1;
    }
    return make_grid(grid, "t1", "t2", "1/Omega", std::move(values));
}

}  // namespace ionspec
