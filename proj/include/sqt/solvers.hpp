#pragma once

// Fixed-point solvers for the quadratic matrix equation A X^2 + B X + C = X
// (minimal nonnegative solution, three classical iterations from X_0 = 0)
// and the coupled incremental-Newton square-root iteration. Each solver runs
// either on full matrices in any representation mode, or purely at the
// symbol level when the coefficients all lie in the same algebra.

#include <cstddef>
#include <string>

#include "sqt/sqt_matrix.hpp"

namespace sqt {

enum class QmeVariant { Natural, Traditional, UBased };

const char* variant_name(QmeVariant v);

struct SolveReport {
    std::size_t iterations = 0;
    double residual = 0.0;            // infinity norm of the defining equation
    std::size_t symbol_size = 0;      // stored coefficients a_0..a_d
    std::size_t correction_rows = 0;
    std::size_t correction_cols = 0;
    std::size_t correction_rank = 0;
    double elapsed_seconds = 0.0;     // report-only, never asserted
};

struct QmeProblem {
    SqtMatrix a, b, c;                // same mode and alpha
    QmeVariant variant = QmeVariant::Natural;
    double tol = 5e-15;
    std::size_t max_iterations = 100000;

    // Stochasticity check of A + B + C (warning, not an error):
    // empty string when consistent.
    std::string validate() const;
};

struct QmeSolution {
    SqtMatrix g;
    SolveReport report;
};

QmeSolution qme_solve(const QmeProblem& p);

struct QmeSymbolSolution {
    SymmetricSymbol g;
    SolveReport report;
};

// The scalar recurrence x <- a x^2 + b x + c (and variants) run pointwise on
// an adaptive root-of-unity grid; valid when A, B, C all lie in one P_alpha.
QmeSymbolSolution qme_symbol_solve(const SymmetricSymbol& a, const SymmetricSymbol& b,
                                   const SymmetricSymbol& c, QmeVariant variant,
                                   double tol, std::size_t max_iterations = 100000);

struct SqrtSolution {
    SqtMatrix x;
    SolveReport report;
};

// X_0 = A, E_0 = (I - A)/2; X <- X + E, E <- -E X^{-1} E / 2.
// Halts when max(|E| symbol coefficient, ||K(E)||_inf) <= tol * ||X||_inf.
SqrtSolution sqrt_solve(const SqtMatrix& a, double tol,
                        std::size_t max_iterations = 200);

}  // namespace sqt
