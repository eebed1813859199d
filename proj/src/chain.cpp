#include "ionspec/chain.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ionspec/operators.hpp"

namespace ionspec {

namespace {

RealVector force_residual(const RealVector& u) {
    const int n = static_cast<int>(u.size());
    RealVector r(n);
    for (int m = 0; m < n; ++m) {
        double coulomb = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == m) continue;
            const double d = u[m] - u[j];
            coulomb += (d > 0 ? 1.0 : -1.0) / (d * d);
        }
        r[m] = u[m] - coulomb;
    }
    return r;
}

RealMatrix force_jacobian(const RealVector& u) {
    const int n = static_cast<int>(u.size());
    RealMatrix jac = RealMatrix::Identity(n, n);
    for (int m = 0; m < n; ++m) {
        for (int j = 0; j < n; ++j) {
            if (j == m) continue;
            const double inv_d3 = 1.0 / std::pow(std::abs(u[m] - u[j]), 3);
            jac(m, m) += 2.0 * inv_d3;
            jac(m, j) -= 2.0 * inv_d3;
        }
    }
    return jac;
}

}  // namespace

double equilibrium_residual(const RealVector& positions) {
    return force_residual(positions).cwiseAbs().maxCoeff();
}

ChainGeometry solve_equilibrium(int n_ions, double tol, int max_iter) {
    if (n_ions < 1) throw std::invalid_argument("solve_equilibrium: n_ions must be >= 1");

    ChainGeometry geom;
    geom.n_ions = n_ions;
    if (n_ions == 1) {
        geom.positions = RealVector::Zero(1);
        return geom;
    }

    // Uniform initial grid; spacing near the typical inter-ion distance keeps
    // the Newton steps well inside the ordering-preserving region.
    RealVector u(n_ions);
    for (int m = 0; m < n_ions; ++m) u[m] = 1.25 * (m - 0.5 * (n_ions - 1));

    double res = force_residual(u).cwiseAbs().maxCoeff();
    for (int it = 0; it < max_iter; ++it) {
        if (res < tol) break;
        const RealVector r = force_residual(u);
        const RealVector step = force_jacobian(u).partialPivLu().solve(r);
        double damping = 1.0;
        RealVector candidate = u - step;
        double cand_res = force_residual(candidate).cwiseAbs().maxCoeff();
        while (cand_res > res && damping > 1e-8) {   // damp on residual increase
            damping *= 0.5;
            candidate = u - damping * step;
            cand_res = force_residual(candidate).cwiseAbs().maxCoeff();
        }
        u = candidate;
        res = cand_res;
    }
    if (res >= tol) {
        std::ostringstream msg;
        msg << "solve_equilibrium: no convergence for N=" << n_ions << " (residual " << res << ")";
        throw std::runtime_error(msg.str());
    }

    // Remove the numerical drift of the center of mass; the potential is
    // translation-symmetric only through the quadratic term, so this is a
    // cosmetic re-centering below the solver tolerance.
    u.array() -= u.mean();
    geom.positions = u;
    return geom;
}

ChainModel build_chain_model(const ChainGeometry& geometry, double beta, double anharmonicity) {
    if (beta < 0.0) throw std::invalid_argument("build_chain_model: beta must be >= 0");
    if (beta > 0.3)
        std::cerr << "warning: beta = " << beta
                  << " is outside the tight transverse confinement regime (beta << 1)\n";

    const int n = geometry.n_ions;
    ChainModel model;
    model.n_ions = n;
    model.beta = beta;
    model.anharmonicity = anharmonicity;
    model.positions = geometry.positions;
    model.site_energies = RealVector::Ones(n);
    model.couplings = RealMatrix::Zero(n, n);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double dist = std::abs(geometry.positions[i] - geometry.positions[j]);
            if (dist < 1e-12)
                throw std::invalid_argument("build_chain_model: duplicate ion positions");
            const double coupling = 0.5 * beta / (dist * dist * dist);
            model.couplings(i, j) = coupling;
            model.site_energies[i] -= coupling;
        }
    }
    return model;
}

ExcitonBasis diagonalize_single_sector(const ChainModel& model) {
    const int n = model.n_ions;
    RealMatrix h = model.couplings;
    h.diagonal() = model.site_energies;

    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_single_sector: eigensolver failed");

    ExcitonBasis exciton;
    exciton.frequencies = solver.eigenvalues();   // ascending
    exciton.modes = solver.eigenvectors();

    // Deterministic sign: largest-magnitude component of each mode positive.
    for (int k = 0; k < n; ++k) {
        int arg_max = 0;
        exciton.modes.col(k).cwiseAbs().maxCoeff(&arg_max);
        if (exciton.modes(arg_max, k) < 0.0) exciton.modes.col(k) *= -1.0;
    }
    return exciton;
}

Matrix build_hamiltonian(const ChainModel& model, const StateBasis& basis) {
    if (basis.kind() != BasisKind::Phonon)
        throw std::invalid_argument("build_hamiltonian: requires a phonon basis");
    if (basis.n_sites() != model.n_ions)
        throw std::invalid_argument("build_hamiltonian: basis/model site count mismatch");

    const int d = basis.dim();
    Matrix h = Matrix::Zero(d, d);

    // Diagonal part: site energies plus on-site anharmonicity U n(n-1).
    for (int s = 0; s < d; ++s) {
        double e = 0.0;
        for (int i = 0; i < model.n_ions; ++i) {
            const int n = basis.occupation(s, i);
            e += model.site_energies[i] * n + model.anharmonicity * n * (n - 1);
        }
        h(s, s) = e;
    }

    // Hopping: a_i^dag a_j moves one excitation j -> i within the cap.
    for (int s = 0; s < d; ++s) {
        for (int j = 0; j < model.n_ions; ++j) {
            const int nj = basis.occupation(s, j);
            if (nj == 0) continue;
            for (int i = 0; i < model.n_ions; ++i) {
                if (i == j || model.couplings(i, j) == 0.0) continue;
                std::vector<int> target = basis.state(s);
                target[static_cast<std::size_t>(j)] = nj - 1;
                target[static_cast<std::size_t>(i)] += 1;
                const int row = basis.index_of(target);
                if (row < 0) continue;
                const double amp = std::sqrt(static_cast<double>(nj)) *
                                   std::sqrt(static_cast<double>(target[static_cast<std::size_t>(i)]));
                h(row, s) += model.couplings(i, j) * amp;
            }
        }
    }
    return h;
}

nlohmann::json ChainModel::to_json() const {
    nlohmann::json j;
    j["n_ions"] = n_ions;
    j["beta"] = beta;
    j["anharmonicity"] = anharmonicity;
    j["positions"] = std::vector<double>(positions.begin(), positions.end());
    j["site_energies"] = std::vector<double>(site_energies.begin(), site_energies.end());
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n_ions; ++i)
        rows.emplace_back(couplings.row(i).begin(), couplings.row(i).end());
    j["couplings"] = rows;
    return j;
}

ChainModel ChainModel::from_json(const nlohmann::json& j) {
    ChainModel m;
    m.n_ions = j.at("n_ions").get<int>();
    m.beta = j.at("beta").get<double>();
    m.anharmonicity = j.at("anharmonicity").get<double>();
    const auto pos = j.at("positions").get<std::vector<double>>();
    const auto energies = j.at("site_energies").get<std::vector<double>>();
    const auto rows = j.at("couplings").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(pos.size()) != m.n_ions || static_cast<int>(energies.size()) != m.n_ions ||
        static_cast<int>(rows.size()) != m.n_ions)
        throw std::invalid_argument("ChainModel::from_json: inconsistent sizes");
    m.positions = Eigen::Map<const RealVector>(pos.data(), m.n_ions);
    m.site_energies = Eigen::Map<const RealVector>(energies.data(), m.n_ions);
    m.couplings = RealMatrix::Zero(m.n_ions, m.n_ions);
    for (int i = 0; i < m.n_ions; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.n_ions)
            throw std::invalid_argument("ChainModel::from_json: inconsistent sizes");
        for (int k = 0; k < m.n_ions; ++k) m.couplings(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    return m;
}

}  // namespace ionspec
