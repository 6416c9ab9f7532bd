#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sqt/algebra.hpp"
#include "sqt/errors.hpp"

using namespace sqt;

TEST_CASE("h vectors in closed form") {
    const double alpha = 0.6, theta = alpha * alpha - 1.0;
    const BasisVector h4 = h_vector(4, alpha);
    REQUIRE(h4.entries.size() == 4);
    CHECK(h4.entries[0] == doctest::Approx(theta * alpha * alpha));
    CHECK(h4.entries[1] == doctest::Approx(theta * alpha));
    CHECK(h4.entries[2] == doctest::Approx(theta));
    CHECK(h4.entries[3] == doctest::Approx(alpha));

    // alpha = 1: theta = 0, h_n collapses to e_n
    const BasisVector u3 = h_vector(3, 1.0);
    CHECK(u3.entries == std::vector<double>{0.0, 0.0, 1.0});
    // alpha = 0: theta = -1, h_n = -e_{n-1}
    const BasisVector z3 = h_vector(3, 0.0);
    CHECK(z3.entries == std::vector<double>{0.0, -1.0, 0.0});
}

TEST_CASE("three-term recurrence ties h, k, and the generator together") {
    for (double alpha : {-1.0, -0.4, 0.0, 0.7, 1.0, 1.3}) {
        // A h_n = h_{n-1} + h_{n+1}   (h_0 = e_1)
        for (std::size_t n = 2; n <= 8; ++n) {
            const std::vector<double> lhs =
                apply_a_alpha(alpha, h_vector(n, alpha).entries);
            const BasisVector lo = h_vector(n - 1, alpha), hi = h_vector(n + 1, alpha);
            for (std::size_t i = 0; i < lhs.size(); ++i) {
                const double want = (i < lo.entries.size() ? lo.entries[i] : 0.0) +
                                    (i < hi.entries.size() ? hi.entries[i] : 0.0);
                CHECK(lhs[i] == doctest::Approx(want).epsilon(1e-13));
            }
        }
        // k_n = sum_i binom(n, i) h_{n-2i}
        for (std::size_t n = 1; n <= 10; ++n) {
            const std::vector<double> k = k_vector(n, alpha);
            const PowerExpansion e = power_to_basis(n);
            std::vector<double> want(n, 0.0);
            for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
                const BasisVector h = h_vector(n - 2 * i, alpha);
                for (std::size_t j = 0; j < h.entries.size(); ++j)
                    want[j] += static_cast<double>(e.coeffs[i]) * h.entries[j];
            }
            REQUIRE(k.size() == n);
            for (std::size_t j = 0; j < n; ++j)
                CHECK(k[j] == doctest::Approx(want[j]).epsilon(1e-10));
        }
    }
}

TEST_CASE("binomial and the power expansion") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(6, 2) == 15);
    CHECK(binomial(52, 26) == 495918532948104LL);
    CHECK_THROWS_AS(binomial(61, 30), BinomialOverflow);

    const PowerExpansion e4 = power_to_basis(4);
    CHECK(e4.coeffs == std::vector<std::int64_t>{1, 4});  // P_4 + 4 P_2
    CHECK(e4.phi == 6);                                   // + binom(4,2) I
    const PowerExpansion e5 = power_to_basis(5);
    CHECK(e5.coeffs == std::vector<std::int64_t>{1, 5, 10});
    CHECK(e5.phi == 0);
}

TEST_CASE("basis-to-power inverts the expansion") {
    // P_4 = A^4 - 4 A^2 + 2 I
    CHECK(basis_to_power(4) == std::vector<std::int64_t>{2, 0, -4, 0, 1});
    CHECK(basis_to_power(1) == std::vector<std::int64_t>{0, 1});
    CHECK(basis_to_power(0) == std::vector<std::int64_t>{1});

    // composing the two maps must give the identity on coefficients: expand
    // A^n over P-basis, replace each P by its power form, compare to e_n
    for (std::size_t n = 1; n <= 12; ++n) {
        std::vector<double> acc(n + 1, 0.0);
        const PowerExpansion e = power_to_basis(n);
        acc[0] += static_cast<double>(e.phi);
        for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
            const std::vector<std::int64_t> c = basis_to_power(n - 2 * i);
            for (std::size_t j = 0; j < c.size(); ++j)
                acc[j] += static_cast<double>(e.coeffs[i] * c[j]);
        }
        for (std::size_t j = 0; j <= n; ++j)
            CHECK(acc[j] == doctest::Approx(j == n ? 1.0 : 0.0));
    }
}

TEST_CASE("eta backward recurrence") {
    const SymmetricSymbol a({0.5, 0.25, -0.4, 0.1});
    for (double alpha : {-1.0, 0.0, 0.3, 1.0}) {
        const HankelBlock eta = eta_vector(a, alpha);
        REQUIRE(eta.support() == a.degree());
        // oracle: eta = sum_n a_n h_n
        std::vector<double> want(a.degree(), 0.0);
        for (std::size_t n = 1; n <= a.degree(); ++n) {
            const BasisVector h = h_vector(n, alpha);
            for (std::size_t j = 0; j < h.entries.size() && j < want.size(); ++j)
                want[j] += a[n] * h.entries[j];
        }
        for (std::size_t j = 0; j < want.size(); ++j)
            CHECK(eta.first_column[j] == doctest::Approx(want[j]).epsilon(1e-14));

        // Hankel indexing: entry(i, j) = eta_{i+j-1}
        CHECK(eta.entry(1, 1) == eta.first_column[0]);
        CHECK(eta.entry(2, 1) == eta.entry(1, 2));
        CHECK(eta.entry(5, 5) == 0.0);  // beyond the support
    }
}

TEST_CASE("special-case corner forms match the general recurrence") {
    const SymmetricSymbol a({0.2, -0.7, 0.3, 0.05, 0.11});
    for (double alpha : {-1.0, 0.0, 1.0}) {
        const HankelBlock lhs = special_case_form(alpha, a);
        const HankelBlock rhs = eta_vector(a, alpha);
        const std::size_t m = std::max(lhs.support(), rhs.support());
        for (std::size_t i = 1; i <= m; ++i)
            CHECK(lhs.entry(i, 1) == doctest::Approx(rhs.entry(i, 1)).epsilon(1e-15));
    }
    CHECK_THROWS_AS(special_case_form(0.5, a), BadAlpha);
}

TEST_CASE("Hankel norm closed form") {
    for (double alpha : {-1.3, -1.0, -0.5, 0.0, 0.5, 1.0, 1.3})
        for (std::size_t n = 1; n <= 12; ++n) {
            double sum = 0.0;
            for (double v : h_vector(n, alpha).entries) sum += std::abs(v);
            CHECK(hankel_norm_bound(n, alpha) == doctest::Approx(sum).epsilon(1e-12));
        }
}

TEST_CASE("growth warning flags |alpha| > 1 only") {
    AlgebraElement e;
    e.alpha = 1.0;
    CHECK_FALSE(e.growth_warning());
    e.alpha = -1.3;
    CHECK(e.growth_warning());
}
