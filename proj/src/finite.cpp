#include "sqt/finite.hpp"

#include <cmath>
#include <numbers>

#include "sqt/algebra.hpp"
#include "sqt/errors.hpp"

namespace sqt {

Eigen::MatrixXd finite_a(Eigen::Index m, double alpha, double beta) {
    if (m < 1) throw IndexOutOfRange("finite_a: m must be positive");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    a(0, 0) = alpha;
    a(m - 1, m - 1) = beta;
    if (m == 1) a(0, 0) = alpha + beta;  // both corners coincide
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        a(i, i + 1) = 1.0;
        a(i + 1, i) = 1.0;
    }
    return a;
}

Eigen::MatrixXd finite_basis(Eigen::Index i, Eigen::Index m, double alpha, double beta) {
    if (m < 1 || i < 0 || i > m - 1)
        throw IndexOutOfRange("finite_basis: need 0 <= i <= m-1");
    if (i == 0) return Eigen::MatrixXd::Identity(m, m);

    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        if (r + i < m) {
            p(r, r + i) = 1.0;
            p(r + i, r) = 1.0;
        }
    }
    const BasisVector ha = h_vector(static_cast<std::size_t>(i), alpha);
    const BasisVector hb = h_vector(static_cast<std::size_t>(i), beta);
    for (Eigen::Index r = 1; r <= i && r <= m; ++r)
        for (Eigen::Index c = 1; c <= m && r + c - 1 <= i; ++c) {
            p(r - 1, c - 1) += ha.entries[r + c - 2];
            // flipped corner: J H(h_i(beta)) J
            p(m - r, m - c) += hb.entries[r + c - 2];
        }
    return p;
}

Eigen::MatrixXd finite_power_expand(Eigen::Index n, Eigen::Index m, double alpha,
                                    double beta) {
    if (n < 1 || n > m - 1)
        throw IndexOutOfRange("finite_power_expand: need 1 <= n <= m-1");
    const PowerExpansion e = power_to_basis(static_cast<std::size_t>(n));
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t i = 0; i < e.coeffs.size(); ++i)
        a += static_cast<double>(e.coeffs[i]) *
             finite_basis(n - 2 * static_cast<Eigen::Index>(i), m, alpha, beta);
    a += static_cast<double>(e.phi) * Eigen::MatrixXd::Identity(m, m);
    return a;
}

Eigen::MatrixXd dst1_matrix(Eigen::Index m) {
    const double h = std::numbers::pi / static_cast<double>(m + 1);
    const double scale = std::sqrt(2.0 / static_cast<double>(m + 1));
    Eigen::MatrixXd s(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k)
            s(j, k) = scale * std::sin(static_cast<double>((j + 1) * (k + 1)) * h);
    return s;
}

DiagCheckResult finite_diag_check(Eigen::Index i, Eigen::Index m, double alpha,
                                  double beta) {
    if (alpha != 0.0 || beta != 0.0)
        throw NotImplemented(
            "finite_diag_check: only the tau case alpha = beta = 0 ships; other "
            "sign pairs use different sine/cosine transform types");
    const Eigen::MatrixXd s = dst1_matrix(m);
    const Eigen::MatrixXd d = s.transpose() * finite_basis(i, m, 0.0, 0.0) * s;

    DiagCheckResult r;
    const double h = std::numbers::pi / static_cast<double>(m + 1);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k) {
            if (j == k) {
                const double expected =
                    i == 0 ? 1.0
                           : 2.0 * std::cos(static_cast<double>(i * (k + 1)) * h);
                r.max_diag_error = std::max(r.max_diag_error, std::abs(d(j, k) - expected));
            } else {
                r.max_offdiag = std::max(r.max_offdiag, std::abs(d(j, k)));
            }
        }
    return r;
}

}  // namespace sqt
