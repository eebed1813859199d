#include "ionspec/superop.hpp"

#include <stdexcept>

namespace ionspec {

Vector vectorize(const Matrix& m) {
    // Eigen stores column-major, so the raw buffer already is vec(m).
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix devectorize(const Vector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim)
        throw std::invalid_argument("devectorize: size mismatch");
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

SuperOperator SuperOperator::identity(int hilbert_dim) {
    const Eigen::Index n = static_cast<Eigen::Index>(hilbert_dim) * hilbert_dim;
    return SuperOperator(hilbert_dim, Matrix::Identity(n, n));
}

Matrix SuperOperator::apply(const Matrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_)
        throw std::invalid_argument("SuperOperator::apply: dimension mismatch");
    return devectorize(m_ * vectorize(rho), dim_);
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("SuperOperator: dimension mismatch");
    m_ += other.m_;
    return *this;
}

SuperOperator& SuperOperator::operator-=(const SuperOperator& other) {
    if (other.dim_ != dim_) throw std::invalid_argument("SuperOperator: dimension mismatch");
    m_ -= other.m_;
    return *this;
}

SuperOperator SuperOperator::operator*(const SuperOperator& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("SuperOperator: dimension mismatch");
    return SuperOperator(dim_, m_ * other.m_);
}

SuperOperator SuperOperator::operator*(Complex scale) const {
    return SuperOperator(dim_, Matrix(m_ * scale));
}

SuperOperator left_multiply(const Matrix& a) {
    const int d = static_cast<int>(a.rows());
    return SuperOperator(d, kron(Matrix::Identity(d, d), a));
}

SuperOperator right_multiply(const Matrix& b) {
    const int d = static_cast<int>(b.rows());
    return SuperOperator(d, kron(b.transpose(), Matrix::Identity(d, d)));
}

SuperOperator sandwich(const Matrix& a, const Matrix& b) {
    const int d = static_cast<int>(a.rows());
    return SuperOperator(d, kron(b.transpose(), a));
}

SuperOperator build_liouvillian(const Matrix& hamiltonian,
                                const std::vector<std::pair<Matrix, double>>& lindblads) {
    const int d = static_cast<int>(hamiltonian.rows());
    if (hamiltonian.cols() != d) throw std::invalid_argument("build_liouvillian: H must be square");

    const Matrix id = Matrix::Identity(d, d);
    Matrix gen = -kImag * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));

    for (const auto& [op, rate] : lindblads) {
        if (op.rows() != d || op.cols() != d)
            throw std::invalid_argument("build_liouvillian: Lindblad dimension mismatch");
        if (rate < 0.0) throw std::invalid_argument("build_liouvillian: negative rate");
        if (rate == 0.0) continue;
        const Matrix ldag_l = op.adjoint() * op;
        gen += rate * (kron(op.conjugate(), op)
                       - 0.5 * kron(id, ldag_l)
                       - 0.5 * kron(ldag_l.transpose(), id));
    }
    return SuperOperator(d, std::move(gen));
}

}  // namespace ionspec
