#pragma once

// The finite m x m two-parameter algebras: basis matrices
// P_i = T_m(z^i + z^-i) + H_i(alpha) + J H_i(beta) J, the binomial power
// expansion, and the discrete-sine-transform diagonalization check for the
// classical tau case alpha = beta = 0.

#include <Eigen/Dense>

#include "sqt/symbol.hpp"

namespace sqt {

// Tridiagonal A with unit off-diagonals and corner entries alpha, beta.
Eigen::MatrixXd finite_a(Eigen::Index m, double alpha, double beta);

// Basis matrix P_i, 0 <= i <= m-1; for i > m/2 the two Hankel corners
// overlap and their entries sum.
Eigen::MatrixXd finite_basis(Eigen::Index i, Eigen::Index m, double alpha, double beta);

// A^n assembled from the binomial combination of basis matrices plus phi_n I,
// 1 <= n <= m-1. Must equal the dense n-th power of finite_a.
Eigen::MatrixXd finite_power_expand(Eigen::Index n, Eigen::Index m, double alpha,
                                    double beta);

// Orthogonal DST-I matrix, S(j,k) = sqrt(2/(m+1)) sin((j+1)(k+1)pi/(m+1)).
Eigen::MatrixXd dst1_matrix(Eigen::Index m);

struct DiagCheckResult {
    double max_offdiag = 0.0;   // of S^T P_i S
    double max_diag_error = 0.0;  // against 2 cos(i k pi / (m+1))
};

// alpha = beta = 0 only; other sign pairs report NotImplemented.
DiagCheckResult finite_diag_check(Eigen::Index i, Eigen::Index m, double alpha,
                                  double beta);

}  // namespace sqt
