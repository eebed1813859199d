#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ionspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kImag{0.0, 1.0};

// All frequencies are in units of the transverse trap frequency (phonons) or
// the Mølmer-Sørensen coupling (spins); times are in the inverse unit.

}  // namespace ionspec
