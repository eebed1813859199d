#pragma once

#include <nlohmann/json_fwd.hpp>

#include "ionspec/basis.hpp"
#include "ionspec/types.hpp"

namespace ionspec {

// Dimensionless equilibrium positions u_i = z_i / l0 of a linear Coulomb
// crystal, ordered ascending and centered on the trap axis.
struct ChainGeometry {
    int n_ions = 0;
    RealVector positions;
};

// Force-balance solution u_m = sum_{n<m} (u_m-u_n)^-2 - sum_{n>m} (u_m-u_n)^-2
// by damped Newton iteration from a uniform initial grid.
ChainGeometry solve_equilibrium(int n_ions, double tol = 1e-12, int max_iter = 200);

// Residual of the force-balance system (max norm), for diagnostics/tests.
double equilibrium_residual(const RealVector& positions);

// Transverse local-phonon tight-binding model. Site energies and couplings in
// units of the transverse trap frequency:
//   w0_i = 1 - (beta/2) sum_{j!=i} |u_i-u_j|^-3,  t_ij = (beta/2)|u_i-u_j|^-3.
struct ChainModel {
    int n_ions = 0;
    double beta = 0.0;            // nu_z^2 / nu_x^2
    double anharmonicity = 0.0;   // U, units of nu_x
    RealVector positions;
    RealVector site_energies;
    RealMatrix couplings;         // symmetric, zero diagonal

    nlohmann::json to_json() const;
    static ChainModel from_json(const nlohmann::json& j);
};

ChainModel build_chain_model(const ChainGeometry& geometry, double beta, double anharmonicity);

// Single-excitation eigenmodes: frequencies ascending, columns of `modes` are
// the site-basis eigenvectors with a deterministic sign (largest-magnitude
// component positive).
struct ExcitonBasis {
    RealVector frequencies;
    RealMatrix modes;
};

ExcitonBasis diagonalize_single_sector(const ChainModel& model);

// Full truncated-basis Hamiltonian
//   H = sum_i w0_i n_i + sum_{i<j} t_ij (a_i^dag a_j + h.c.) + U sum_i a_i^dag^2 a_i^2.
Matrix build_hamiltonian(const ChainModel& model, const StateBasis& basis);

}  // namespace ionspec
