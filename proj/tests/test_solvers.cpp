#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sqt/errors.hpp"
#include "sqt/solvers.hpp"

using namespace sqt;

namespace {

QmeProblem scalar_problem(QmeVariant v) {
    // constant symbols: the equation collapses to 0.2 g^2 + 0.3 g + 0.2 = g,
    // whose minimal root is (0.7 - sqrt(0.33)) / 0.4
    QmeProblem p;
    p.a = sqt_from_symbol(0.0, SymmetricSymbol::constant(0.2));
    p.b = sqt_from_symbol(0.0, SymmetricSymbol::constant(0.3));
    p.c = sqt_from_symbol(0.0, SymmetricSymbol::constant(0.2));
    p.variant = v;
    return p;
}

const double kScalarRoot = (0.7 - std::sqrt(0.33)) / 0.4;

}  // namespace

TEST_CASE("all variants reach the scalar minimal root") {
    for (QmeVariant v : {QmeVariant::Natural, QmeVariant::Traditional, QmeVariant::UBased}) {
        const QmeSolution s = qme_solve(scalar_problem(v));
        CHECK(s.g.symbol()[0] == doctest::Approx(kScalarRoot).epsilon(1e-12));
        CHECK(s.g.symbol().degree() == 0);
        CHECK(s.report.residual <= 1e-13);
        CHECK(s.report.iterations > 0);
        // U-based converges fastest, natural slowest, on this instance
        if (v == QmeVariant::Natural) CHECK(s.report.iterations > 20);
    }
}

TEST_CASE("degenerate instances") {
    // A = B = 0 converges to G = C in one step
    QmeProblem p = scalar_problem(QmeVariant::Natural);
    p.a = sqt_zero(Mode::Algebra, 0.0);
    p.b = sqt_zero(Mode::Algebra, 0.0);
    p.c = sqt_from_symbol(0.0, SymmetricSymbol({0.4, 0.1}));
    const QmeSolution s = qme_solve(p);
    CHECK(sym_sub(s.g.symbol(), p.c.symbol()).max_coeff() <= 1e-14);
    CHECK(s.report.iterations <= 3);
}

TEST_CASE("iteration cap raises no-convergence") {
    QmeProblem p = scalar_problem(QmeVariant::Natural);
    p.max_iterations = 3;
    CHECK_THROWS_AS((void)qme_solve(p), NoConvergence);
}

TEST_CASE("symbol-level path matches the matrix path") {
    const SymmetricSymbol a({0.10, 0.10}), b({0.23, 0.08}), c({0.11, 0.10});
    const QmeSymbolSolution sym =
        qme_symbol_solve(a, b, c, QmeVariant::UBased, 1e-13);
    QmeProblem p;
    p.a = sqt_from_symbol(1.0, a);
    p.b = sqt_from_symbol(1.0, b);
    p.c = sqt_from_symbol(1.0, c);
    p.variant = QmeVariant::UBased;
    p.tol = 1e-13;
    const QmeSolution mat = qme_solve(p);
    CHECK(sym_sub(sym.g, mat.g.symbol()).max_coeff() <= 1e-10);
    CHECK(sym.report.residual <= 1e-12);
    CHECK(sym.report.symbol_size == sym.g.degree() + 1);
}

TEST_CASE("stochastic-consistency warning") {
    QmeProblem p = scalar_problem(QmeVariant::Natural);
    CHECK_FALSE(p.validate().empty());  // 0.2 + 0.3 + 0.2 does not sum to 1
    p.b = sqt_from_symbol(0.0, SymmetricSymbol::constant(0.6));
    CHECK(p.validate().empty());  // now every row of A + B + C sums to 1
}

TEST_CASE("square root of a scalar and of a banded symbol") {
    // constant symbol 4: X = 2 in a few steps
    const SqtMatrix four = sqt_from_symbol(0.0, SymmetricSymbol::constant(4.0));
    const SqrtSolution s = sqrt_solve(four, 1e-15);
    CHECK(s.x.symbol()[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.report.residual <= 1e-13);

    // diagonally dominant symbol: X^2 - A small in the infinity norm
    const SqtMatrix a = sqt_from_symbol(1.0, SymmetricSymbol({6.0, 2.0, 0.5}));
    const SqrtSolution r = sqrt_solve(a, 1e-15);
    CHECK(r.report.residual <= 1e-12);
    CHECK(sqt_norm_inf(sqt_sub(sqt_mul(r.x, r.x), a)) <= 1e-11);
    CHECK(r.report.symbol_size == r.x.symbol().degree() + 1);
}

TEST_CASE("report shapes are filled") {
    const QmeSolution s = qme_solve(scalar_problem(QmeVariant::Traditional));
    CHECK(s.report.symbol_size >= 1);
    CHECK(s.report.elapsed_seconds >= 0.0);
    CHECK(s.report.correction_rank ==
          static_cast<std::size_t>(s.g.correction.rank()));
}

TEST_CASE("variant names") {
    CHECK(std::string(variant_name(QmeVariant::Natural)) == "natural");
    CHECK(std::string(variant_name(QmeVariant::Traditional)) == "traditional");
    CHECK(std::string(variant_name(QmeVariant::UBased)) == "ubased");
}
