#include "ionspec/dynamics.hpp"

#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "ionspec/operators.hpp"

namespace ionspec {

std::vector<std::pair<Matrix, double>> noise_lindblads(const NoiseSpec& noise,
                                                       const StateBasis& basis) {
    std::vector<std::pair<Matrix, double>> ops;
    for (const auto& channel : noise) {
        if (channel.rate < 0.0) throw std::invalid_argument("noise_lindblads: negative rate");
        for (int site : channel.sites)
            if (site < 0 || site >= basis.n_sites())
                throw std::out_of_range("noise_lindblads: site out of range");

        switch (channel.kind) {
            case NoiseKind::PhononLocalDephasing:
                for (int site : channel.sites)
                    ops.emplace_back(number_operator(basis, site), channel.rate);
                break;
            case NoiseKind::SpinLocalDephasing:
                for (int site : channel.sites)
                    ops.emplace_back(spin_operator(basis, site, SpinAxis::Z), channel.rate);
                break;
            case NoiseKind::SpinCollectiveDephasing: {
                if (channel.sites.empty())
                    throw std::invalid_argument("noise_lindblads: collective channel needs sites");
                Matrix op = Matrix::Identity(basis.dim(), basis.dim());
                for (int site : channel.sites) op = op * spin_operator(basis, site, SpinAxis::Z);
                ops.emplace_back(std::move(op), channel.rate);
                break;
            }
        }
    }
    return ops;
}

Propagator::Propagator(const Matrix& hamiltonian, const NoiseSpec& noise, const StateBasis& basis)
    : Propagator(build_liouvillian(hamiltonian, noise_lindblads(noise, basis))) {}

Propagator::Propagator(SuperOperator generator) : generator_(std::move(generator)) {
    const Matrix& gen = generator_.matrix();
    Eigen::ComplexEigenSolver<Matrix> solver(gen);
    if (solver.info() == Eigen::Success) {
        eigenvalues_ = solver.eigenvalues();
        eigenvectors_ = solver.eigenvectors();
        Eigen::FullPivLU<Matrix> lu(eigenvectors_);
        if (lu.isInvertible()) {
            eigenvectors_inv_ = lu.inverse();
            const double cond = eigenvectors_.cwiseAbs().colwise().sum().maxCoeff() *
                                eigenvectors_inv_.cwiseAbs().colwise().sum().maxCoeff();
            eigen_ok_ = cond < 1e8;
        }
    }
}

Matrix Propagator::exponential(double t) const {
    if (t == 0.0) {
        const Eigen::Index n = generator_.matrix().rows();
        return Matrix::Identity(n, n);
    }
    if (eigen_ok_) {
        const Vector phases = (eigenvalues_.array() * t).exp();
        return eigenvectors_ * phases.asDiagonal() * eigenvectors_inv_;
    }
    return Matrix(generator_.matrix() * t).exp();   // scaling-and-squaring fallback
}

const Matrix& Propagator::step(double t) const {
    if (t < 0.0) throw std::invalid_argument("Propagator: negative time");
    auto it = cache_.find(t);
    if (it == cache_.end()) it = cache_.emplace(t, exponential(t)).first;
    return it->second;
}

Matrix Propagator::evolve(double t, const Matrix& rho) const {
    if (rho.rows() != hilbert_dim() || rho.cols() != hilbert_dim())
        throw std::invalid_argument("Propagator::evolve: dimension mismatch");
    return devectorize(step(t) * vectorize(rho), hilbert_dim());
}

std::vector<Matrix> Propagator::evolve_grid(double dt, int n_steps, const Matrix& rho) const {
    if (dt <= 0.0) throw std::invalid_argument("Propagator::evolve_grid: dt must be > 0");
    if (n_steps < 1) throw std::invalid_argument("Propagator::evolve_grid: n_steps must be >= 1");

    const Matrix& g = step(dt);
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(n_steps));
    Vector v = vectorize(rho);
    out.push_back(rho);
    for (int k = 1; k < n_steps; ++k) {
        v = g * v;
        out.push_back(devectorize(v, hilbert_dim()));
    }
    return out;
}

}  // namespace ionspec
