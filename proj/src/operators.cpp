#include "ionspec/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace ionspec {

namespace {

void check_site(const StateBasis& basis, int site) {
    if (site < 0 || site >= basis.n_sites()) throw std::out_of_range("site index out of range");
}

// sigma_plus at `site`: flips the bit 0 -> 1, amplitude 1.
Matrix spin_raising(const StateBasis& basis, int site) {
    const int d = basis.dim();
    Matrix m = Matrix::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        if (basis.occupation(col, site) != 0) continue;
        std::vector<int> target = basis.state(col);
        target[static_cast<std::size_t>(site)] = 1;
        const int row = basis.index_of(target);
        if (row >= 0) m(row, col) = 1.0;
    }
    return m;
}

}  // namespace

Matrix ladder_operator(const StateBasis& basis, int site, bool raising) {
    if (basis.kind() != BasisKind::Phonon)
        throw std::invalid_argument("ladder_operator: requires a phonon basis");
    check_site(basis, site);

    const int d = basis.dim();
    Matrix up = Matrix::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        const int n = basis.occupation(col, site);
        std::vector<int> target = basis.state(col);
        target[static_cast<std::size_t>(site)] = n + 1;
        const int row = basis.index_of(target);   // -1 when beyond the cap: dropped
        if (row >= 0) up(row, col) = std::sqrt(static_cast<double>(n + 1));
    }
    return raising ? up : Matrix(up.adjoint());
}

Matrix spin_operator(const StateBasis& basis, int site, SpinAxis which) {
    if (basis.kind() != BasisKind::Spin)
        throw std::invalid_argument("spin_operator: requires a spin basis");
    check_site(basis, site);

    switch (which) {
        case SpinAxis::Plus:
            return spin_raising(basis, site);
        case SpinAxis::Minus:
            return spin_raising(basis, site).adjoint();
        case SpinAxis::X:
            return spin_raising(basis, site) + Matrix(spin_raising(basis, site).adjoint());
        case SpinAxis::Y: {
            const Matrix sp = spin_raising(basis, site);
            return -kImag * (sp - Matrix(sp.adjoint()));
        }
        case SpinAxis::Z: {
            const int d = basis.dim();
            Matrix m = Matrix::Zero(d, d);
            for (int i = 0; i < d; ++i) m(i, i) = basis.occupation(i, site) == 0 ? -1.0 : 1.0;
            return m;
        }
    }
    throw std::logic_error("spin_operator: unknown axis");
}

Matrix number_operator(const StateBasis& basis, int site) {
    if (basis.kind() != BasisKind::Phonon)
        throw std::invalid_argument("number_operator: requires a phonon basis");
    check_site(basis, site);
    const int d = basis.dim();
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = static_cast<double>(basis.occupation(i, site));
    return m;
}

Matrix total_number_operator(const StateBasis& basis) {
    const int d = basis.dim();
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = static_cast<double>(basis.total_excitation(i));
    return m;
}

Matrix site_diagonal_operator(const StateBasis& basis, int site,
                              const std::function<double(int)>& f) {
    check_site(basis, site);
    const int d = basis.dim();
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = f(basis.occupation(i, site));
    return m;
}

Matrix ground_state_density(const StateBasis& basis) {
    Matrix rho = Matrix::Zero(basis.dim(), basis.dim());
    rho(0, 0) = 1.0;   // ground state is index 0 by construction
    return rho;
}

bool is_hermitian(const Matrix& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

}  // namespace ionspec
