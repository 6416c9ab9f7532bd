#pragma once

// Semi-infinite symmetric quasi-Toeplitz matrices in two representations:
//   ALGEBRA:  A = T(a) + H_alpha(a) + U*V^T   (element of P_alpha plus correction)
//   TOEPLITZ: A = T(a) + U*V^T                (baseline representation)
// Arithmetic closes at the symbol level; corrections combine as low-rank
// factors and are recompressed after every operation.

#include <iosfwd>

#include "sqt/algebra.hpp"
#include "sqt/lowrank.hpp"
#include "sqt/symbol.hpp"

namespace sqt {

enum class Mode { Algebra, Toeplitz };

const char* mode_name(Mode m);

struct SqtMatrix {
    Mode mode = Mode::Algebra;
    AlgebraElement element;       // alpha ignored in Toeplitz mode
    LowRankCorrection correction;

    double alpha() const { return element.alpha; }
    const SymmetricSymbol& symbol() const { return element.symbol; }
};

SqtMatrix sqt_from_symbol(double alpha, const SymmetricSymbol& a);
SqtMatrix sqt_toeplitz(const SymmetricSymbol& a, LowRankCorrection k = {});
SqtMatrix sqt_identity(Mode mode, double alpha);
SqtMatrix sqt_zero(Mode mode, double alpha);

// Re-express the same semi-infinite matrix in the target mode (and alpha,
// for ALGEBRA targets): the eta Hankel block moves in or out of the
// correction as a rank <= d update, then the correction is recompressed.
SqtMatrix sqt_convert(const SqtMatrix& a, Mode target, double alpha,
                      double tol = kCompressTol);

SqtMatrix sqt_add(const SqtMatrix& a, const SqtMatrix& b, double tol = kCompressTol);
SqtMatrix sqt_sub(const SqtMatrix& a, const SqtMatrix& b, double tol = kCompressTol);
SqtMatrix sqt_scale(double s, const SqtMatrix& a);

// Pre-compression product factors; the factor width is exactly k_A + k_B in
// ALGEBRA mode and k_A + k_B + min(d_a, d_b) in TOEPLITZ mode.
struct MulFactors {
    SymmetricSymbol c;
    LowRankCorrection k;
};
MulFactors sqt_mul_factors(const SqtMatrix& a, const SqtMatrix& b);

SqtMatrix sqt_mul(const SqtMatrix& a, const SqtMatrix& b, double tol = kCompressTol);

// Structured inverse via symbol inversion plus the Sherman-Morrison-Woodbury
// update of the correction.
SqtMatrix sqt_inv(const SqtMatrix& a, double eps, double tol = kCompressTol);

// Residual target for inverting a, from a cheap grid estimate of cond(a):
// the attainable residual floor scales with cond times unit roundoff.
double estimate_inversion_eps(const SymmetricSymbol& a, double floor_eps = 1e-14);

// sym_inv with the estimated residual target; used by the solvers where
// cond is not known in advance.
InversionResult sym_inv_auto(const SymmetricSymbol& a, double floor_eps = 1e-14);

// Exact infinity norm of the whole matrix.
double sqt_norm_inf(const SqtMatrix& a);
// Infinity norm of the correction part only (the stop tests of the solvers).
double correction_norm_inf(const SqtMatrix& a);

// y = A * x over the finite support |x| + d (longer when the correction
// reaches further down).
Eigen::VectorXd sqt_matvec(const SqtMatrix& a, const Eigen::VectorXd& x);

// Leading N x N principal truncation (the dense test oracle).
Eigen::MatrixXd sqt_to_dense(const SqtMatrix& a, Eigen::Index n);

// Apply the structured part (Toeplitz band plus, in ALGEBRA mode, the eta
// Hankel block) to a tall dense factor; the result has rows + degree rows,
// with trailing rows below row_tol * max-row-norm dropped.
Eigen::MatrixXd structured_apply(Mode mode, const AlgebraElement& e,
                                 const Eigen::MatrixXd& x, double row_tol = 1e-15);

// SQT1 text format (one record): header, alpha, symbol, correction factors.
void write_sqt(std::ostream& os, const SqtMatrix& a);
SqtMatrix read_sqt(std::istream& is);

}  // namespace sqt
