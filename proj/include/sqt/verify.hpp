#pragma once

// Property suites behind the `verify` command: basis identities, symbol
// arithmetic laws, structured-matrix coherence against dense truncations,
// and the finite-algebra checks. Deterministic for a fixed seed.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqt/sqt_matrix.hpp"

namespace sqt {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // worst observed error or a short note
};

// Dense N x N truncation of the tridiagonal generator with corner alpha.
Eigen::MatrixXd dense_a_alpha(Eigen::Index n, double alpha);

// Random trimmed symbol with coefficients in [-1, 1].
SymmetricSymbol random_symbol(std::uint64_t& state, std::size_t degree);

std::vector<CheckResult> verify_basis();
std::vector<CheckResult> verify_algebra(std::uint64_t seed);
std::vector<CheckResult> verify_sqt(std::uint64_t seed);
std::vector<CheckResult> verify_finite();
std::vector<CheckResult> verify_all(std::uint64_t seed);

}  // namespace sqt
