#pragma once

#include <utility>
#include <vector>

#include "ionspec/types.hpp"

namespace ionspec {

// Column-major vectorization: vec(rho) stacks the columns of rho, so
// vec(A rho B) = (B^T kron A) vec(rho). Fixed so superoperator matrices are
// portable across implementations.
Vector vectorize(const Matrix& m);
Matrix devectorize(const Vector& v, int dim);

Matrix kron(const Matrix& a, const Matrix& b);

// Dense map on vectorized density matrices over a Hilbert space of dimension
// `hilbert_dim`; the stored matrix is hilbert_dim^2 square.
class SuperOperator {
  public:
    SuperOperator() = default;
    explicit SuperOperator(int hilbert_dim)
        : dim_(hilbert_dim), m_(Matrix::Zero(static_cast<Eigen::Index>(hilbert_dim) * hilbert_dim,
                                             static_cast<Eigen::Index>(hilbert_dim) * hilbert_dim)) {}
    SuperOperator(int hilbert_dim, Matrix m) : dim_(hilbert_dim), m_(std::move(m)) {}

    static SuperOperator identity(int hilbert_dim);

    int hilbert_dim() const { return dim_; }
    const Matrix& matrix() const { return m_; }
    Matrix& matrix() { return m_; }

    Matrix apply(const Matrix& rho) const;

    SuperOperator& operator+=(const SuperOperator& other);
    SuperOperator& operator-=(const SuperOperator& other);
    SuperOperator operator*(const SuperOperator& other) const;   // composition
    SuperOperator operator*(Complex scale) const;

  private:
    int dim_ = 0;
    Matrix m_;
};

// rho -> A rho, rho -> rho B, rho -> A rho B as superoperator matrices.
SuperOperator left_multiply(const Matrix& a);
SuperOperator right_multiply(const Matrix& b);
SuperOperator sandwich(const Matrix& a, const Matrix& b);

// Lindblad generator L[rho] = -i[H,rho] + sum_i gamma_i (O_i rho O_i^dag
// - 1/2 {O_i^dag O_i, rho}). Operators are supplied bare with their rates;
// the sqrt(gamma) is absorbed internally.
SuperOperator build_liouvillian(const Matrix& hamiltonian,
                                const std::vector<std::pair<Matrix, double>>& lindblads);

}  // namespace ionspec
