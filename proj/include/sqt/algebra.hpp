#pragma once

// Basis machinery of the matrix algebra generated by the powers of the
// tridiagonal matrix A_alpha (unit off-diagonals, corner entry alpha):
// the h_n correction vectors, the Hankel part eta determined by a symbol,
// change of basis between powers and P_n elements, and norm formulas.

#include <cmath>
#include <cstdint>
#include <vector>

#include "sqt/symbol.hpp"

namespace sqt {

// Coefficients of h_n(z) = theta * sum_{i=1}^{n-1} alpha^{n-i-1} z^i + alpha z^n,
// theta = alpha^2 - 1; entries[i-1] is the coefficient of z^i.
struct BasisVector {
    std::size_t n = 0;
    double alpha = 0.0;
    std::vector<double> entries;
};

// First column of a semi-infinite Hankel matrix with finite support:
// entry (i,j) = eta_{i+j-1}, zero once i+j-1 exceeds the stored length.
struct HankelBlock {
    std::vector<double> first_column;

    std::size_t support() const { return first_column.size(); }
    double entry(std::size_t i, std::size_t j) const {  // 1-based
        const std::size_t k = i + j - 1;
        return k <= first_column.size() ? first_column[k - 1] : 0.0;
    }
};

// An element P_alpha(a) = T(a) + H_alpha(a); the Hankel part is implied by
// (alpha, symbol) and never stored.
struct AlgebraElement {
    double alpha = 0.0;
    SymmetricSymbol symbol;

    // |alpha| > 1: correction entries may grow like |alpha|^n and boundedness
    // of infinite series is not certified; finite symbols stay finite.
    bool growth_warning() const { return std::abs(alpha) > 1.0; }
};

std::int64_t binomial(std::size_t n, std::size_t k);  // throws BinomialOverflow for n > 60

BasisVector h_vector(std::size_t n, double alpha);

// eta_i = alpha*a_i + theta * sum_{j>i} alpha^(j-i-1) a_j, i = 1..d,
// computed by a backward recurrence in O(d). Equals sum_n a_n h_n.
HankelBlock eta_vector(const SymmetricSymbol& a, double alpha);

// ||H_{n,alpha}||_inf = ||h_n||_1 = |alpha| + (1+|alpha|)|1-|alpha|^{n-1}|
double hankel_norm_bound(std::size_t n, double alpha);

// A_alpha^n = sum_i coeffs[i] * P_{n-2i,alpha} + phi * I
struct PowerExpansion {
    std::vector<std::int64_t> coeffs;  // binom(n,i), i = 0..floor((n-1)/2)
    std::int64_t phi = 0;              // 0 for odd n, binom(n,n/2) for even n
};
PowerExpansion power_to_basis(std::size_t n);

// c_0..c_n with P_{n,alpha} = sum_j c_j A_alpha^j; integers, alpha-independent
std::vector<std::int64_t> basis_to_power(std::size_t n);

// First column of the compact (Hankel) part of A_alpha^n, length n,
// by the recurrence k_{m+1} = A_alpha k_m + sigma_m e_1.
std::vector<double> k_vector(std::size_t n, double alpha);

// Closed-form Hankel part for alpha in {-1, 0, 1}; throws BadAlpha otherwise.
HankelBlock special_case_form(double alpha, const SymmetricSymbol& a);

// y = A_alpha * x over support |x|+1 (test helper for the recurrence identities)
std::vector<double> apply_a_alpha(double alpha, const std::vector<double>& x);

}  // namespace sqt
