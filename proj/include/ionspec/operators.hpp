#pragma once

#include <functional>

#include "ionspec/basis.hpp"
#include "ionspec/types.hpp"

namespace ionspec {

// Local phonon ladder operator a_site^dagger (raising=true) or a_site on a
// truncated basis. Matrix elements that would leave the truncated space are
// dropped; lowering is the conjugate transpose of raising.
Matrix ladder_operator(const StateBasis& basis, int site, bool raising);

enum class SpinAxis { X, Y, Z, Plus, Minus };

// Single-site Pauli / ladder operator embedded in the full spin register.
// Sign convention: the ground state |0> has sigma_z eigenvalue -1, so the
// sigma_z readout grows with excitation. sigma_pm = (sigma_x +- i sigma_y)/2,
// i.e. sigma_plus|0> = |1>.
Matrix spin_operator(const StateBasis& basis, int site, SpinAxis which);

// a_site^dagger a_site; diagonal in the enumerated basis (phonon only).
Matrix number_operator(const StateBasis& basis, int site);
Matrix total_number_operator(const StateBasis& basis);

// Diagonal operator f(n_site) over the global basis, where n_site is the
// occupation of `site` in each basis state.
Matrix site_diagonal_operator(const StateBasis& basis, int site,
                              const std::function<double(int)>& f);

Matrix ground_state_density(const StateBasis& basis);

bool is_hermitian(const Matrix& m, double tol = 1e-10);

}  // namespace ionspec
