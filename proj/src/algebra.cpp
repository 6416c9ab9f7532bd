#include "sqt/algebra.hpp"

#include <cmath>

#include "sqt/errors.hpp"

namespace sqt {

std::int64_t binomial(std::size_t n, std::size_t k) {
    if (n > 60)
        throw BinomialOverflow("binomial: n > 60 exceeds the 64-bit safe range");
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // exact at every step: r * (n-k+i) is divisible by i
        r = r * static_cast<std::int64_t>(n - k + i) / static_cast<std::int64_t>(i);
    }
    return r;
}

BasisVector h_vector(std::size_t n, double alpha) {
    if (n < 1) throw BadInput("h_vector: n must be positive");
    const double theta = alpha * alpha - 1.0;
    BasisVector h{n, alpha, std::vector<double>(n, 0.0)};
    double p = 1.0;  // alpha^(n-i-1), built from i = n-1 downwards
    for (std::size_t i = n - 1; i >= 1; --i) {
        h.entries[i - 1] = theta * p;
        p *= alpha;
    }
    h.entries[n - 1] = alpha;
    return h;
}

HankelBlock eta_vector(const SymmetricSymbol& a, double alpha) {
    const std::size_t d = a.degree();
    const double theta = alpha * alpha - 1.0;
    HankelBlock eta{std::vector<double>(d, 0.0)};
    double t = 0.0;  // t_i = a_{i+1} + alpha * t_{i+1}, t_d = 0
    for (std::size_t i = d; i >= 1; --i) {
        eta.first_column[i - 1] = alpha * a[i] + theta * t;
        t = a[i] + alpha * t;
    }
    return eta;
}

double hankel_norm_bound(std::size_t n, double alpha) {
    if (n < 1) throw BadInput("hankel_norm_bound: n must be positive");
    const double aa = std::abs(alpha);
    return aa + (1.0 + aa) * std::abs(1.0 - std::pow(aa, static_cast<double>(n - 1)));
}

PowerExpansion power_to_basis(std::size_t n) {
    if (n < 1) throw BadInput("power_to_basis: n must be positive");
    PowerExpansion e;
    for (std::size_t i = 0; i <= (n - 1) / 2; ++i) e.coeffs.push_back(binomial(n, i));
    e.phi = (n % 2 == 0) ? binomial(n, n / 2) : 0;
    return e;
}

std::vector<std::int64_t> basis_to_power(std::size_t n) {
    // table[m] = coefficients of P_m in powers A^0..A^m
    std::vector<std::vector<std::int64_t>> table(n + 1);
    table[0] = {1};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<std::int64_t> c(m + 1, 0);
        c[m] = 1;  // A^m
        const PowerExpansion e = power_to_basis(m);
        for (std::size_t i = 1; i < e.coeffs.size(); ++i) {
            const std::size_t k = m - 2 * i;
            for (std::size_t j = 0; j <= k; ++j) c[j] -= e.coeffs[i] * table[k][j];
        }
        c[0] -= e.phi;
        table[m] = std::move(c);
    }
    return table[n];
}

std::vector<double> apply_a_alpha(double alpha, const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> y(n + 1, 0.0);
    auto at = [&](std::size_t i) { return i >= 1 && i <= n ? x[i - 1] : 0.0; };
    y[0] = alpha * at(1) + at(2);
    for (std::size_t i = 2; i <= n + 1; ++i) y[i - 1] = at(i - 1) + at(i + 1);
    return y;
}

std::vector<double> k_vector(std::size_t n, double alpha) {
    if (n < 1) throw BadInput("k_vector: n must be positive");
    std::vector<double> k{alpha};
    for (std::size_t m = 1; m < n; ++m) {
        const double sigma =
            (m % 2 == 0) ? alpha * static_cast<double>(binomial(m, m / 2))
                         : -static_cast<double>(binomial(m, m / 2));
        k = apply_a_alpha(alpha, k);
        k[0] += sigma;
    }
    return k;
}

HankelBlock special_case_form(double alpha, const SymmetricSymbol& a) {
    const std::size_t d = a.degree();
    HankelBlock h;
    if (alpha == 0.0) {
        for (std::size_t i = 2; i <= d; ++i) h.first_column.push_back(-a[i]);
    } else if (alpha == 1.0) {
        for (std::size_t i = 1; i <= d; ++i) h.first_column.push_back(a[i]);
    } else if (alpha == -1.0) {
        for (std::size_t i = 1; i <= d; ++i) h.first_column.push_back(-a[i]);
    } else {
        throw BadAlpha("special_case_form: alpha must be -1, 0 or 1");
    }
    return h;
}

}  // namespace sqt
