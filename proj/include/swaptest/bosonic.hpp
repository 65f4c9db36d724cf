#pragma once

#include "swaptest/hilbert.hpp"

namespace swaptest {

// Single-mode operator in the truncated Fock basis, tagged with the mode
// it is meant to act on.
struct ModeOperator {
  Factor mode;
  Eigen::MatrixXcd matrix;
};

// <n-1| a |n> = sqrt(n)
Eigen::MatrixXcd annihilation(int dim);

// exp(alpha a^dag - conj(alpha) a). Throws if the displaced Poisson
// distribution leaves non-negligible mass in the truncation tail.
Eigen::MatrixXcd displacement(Complex alpha, int dim);

// exp[(conj(zeta) a^2 - zeta a^dag^2)/2], zeta = r e^{i phi}
Eigen::MatrixXcd squeeze(double r, double phi, int dim);

// truncated, renormalized coherent state |alpha>
Eigen::VectorXcd coherent_state(Complex alpha, int dim);

// (|alpha> + e^{i phi_cat} |-alpha>) / sqrt(N),
// N = 2 (1 + cos(phi_cat) e^{-2|alpha|^2})
Eigen::VectorXcd cat_state(Complex alpha, double phi_cat, int dim);

// exp(i scale H) for Hermitian H, via eigendecomposition
Eigen::MatrixXcd expm_i_hermitian(const Eigen::MatrixXcd& h, double scale);

// Poisson(lambda) mass at n >= k
double poisson_tail(double lambda, int k);

ModeOperator on_mode(Factor mode, Eigen::MatrixXcd matrix);

}  // namespace swaptest
