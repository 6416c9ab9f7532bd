#pragma once

// Finite-support low-rank corrections K = U * V^T and their deterministic
// QR + SVD recompression. Compression never randomizes: run-to-run output
// is identical for identical inputs.

#include <Eigen/Dense>

namespace sqt {

inline constexpr double kCompressTol = 1e-15;

// Sentinel tolerance: skip recompression entirely (factors are concatenated
// as-is). Used by the solvers, which compress once per outer iteration.
inline constexpr double kNoCompress = -1.0;

struct LowRankCorrection {
    Eigen::MatrixXd U{0, 0};  // m x k
    Eigen::MatrixXd V{0, 0};  // n x k

    Eigen::Index rank() const { return U.cols(); }
    Eigen::Index rows() const { return U.rows(); }
    Eigen::Index cols() const { return V.rows(); }
    bool empty() const { return U.cols() == 0; }

    Eigen::MatrixXd dense() const {
        return empty() ? Eigen::MatrixXd::Zero(0, 0)
                       : Eigen::MatrixXd(U * V.transpose());
    }
};

// Side-by-side concatenation; rows are zero-padded to the larger support.
LowRankCorrection lowrank_concat(const LowRankCorrection& a, const LowRankCorrection& b);

LowRankCorrection lowrank_scale(double s, const LowRankCorrection& k);

// Thin QR of both factors, SVD of the small core, singular values
// sigma_i <= tol * sigma_1 discarded, sqrt(sigma) redistributed to each side.
LowRankCorrection lowrank_compress(const LowRankCorrection& k, double tol = kCompressTol);

// Exact infinity norm of U * V^T.
double lowrank_norm_inf(const LowRankCorrection& k);

// Leading N x N block (zero-padded / clipped).
Eigen::MatrixXd lowrank_dense_block(const LowRankCorrection& k, Eigen::Index n);

}  // namespace sqt
