#pragma once

#include <map>
#include <vector>

#include "ionspec/basis.hpp"
#include "ionspec/superop.hpp"
#include "ionspec/types.hpp"

namespace ionspec {

enum class NoiseKind {
    PhononLocalDephasing,    // L_i = sqrt(gamma) a_i^dag a_i per listed site
    SpinLocalDephasing,      // L_i = sqrt(gamma) sigma_z^(i) per listed site
    SpinCollectiveDephasing  // L = sqrt(gamma) tensor-product of sigma_z over the listed sites
};

struct NoiseChannel {
    NoiseKind kind;
    std::vector<int> sites;
    double rate = 0.0;
};

using NoiseSpec = std::vector<NoiseChannel>;

// Bare Lindblad operators with their rates for build_liouvillian.
std::vector<std::pair<Matrix, double>> noise_lindblads(const NoiseSpec& noise,
                                                       const StateBasis& basis);

// Time evolution under a fixed Liouvillian: G(t) = exp(L t). The generator is
// diagonalized once; ill-conditioned eigenvector matrices (condition number
// above 1e8) fall back to scaling-and-squaring per requested time. Computed
// steps are cached by exact time value. Populate the cache via step() before
// sharing a propagator across threads; cached lookups are then read-only.
class Propagator {
  public:
    Propagator(const Matrix& hamiltonian, const NoiseSpec& noise, const StateBasis& basis);
    explicit Propagator(SuperOperator generator);

    int hilbert_dim() const { return generator_.hilbert_dim(); }
    const SuperOperator& generator() const { return generator_; }
    bool eigendecomposition_used() const { return eigen_ok_; }

    // Dense matrix of G(t) acting on vectorized density matrices.
    const Matrix& step(double t) const;

    Matrix evolve(double t, const Matrix& rho) const;

    // rho(k*dt) for k = 0..n_steps-1; element 0 is the input state. G(dt) is
    // computed once and applied repeatedly.
    std::vector<Matrix> evolve_grid(double dt, int n_steps, const Matrix& rho) const;

  private:
    Matrix exponential(double t) const;

    SuperOperator generator_;
    bool eigen_ok_ = false;
    Vector eigenvalues_;
    Matrix eigenvectors_;
    Matrix eigenvectors_inv_;
    mutable std::map<double, Matrix> cache_;
};

}  // namespace ionspec
