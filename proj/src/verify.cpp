#include "sqt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqt/finite.hpp"
#include "sqt/solvers.hpp"

namespace sqt {

namespace {

double xorshift_unit(std::uint64_t& s) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return 2.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 1.0;
}

std::string fmt(double err) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(2);
    os << "max err " << err;
    return os.str();
}

CheckResult make(std::string name, double err, double tol) {
    return CheckResult{std::move(name), err <= tol, fmt(err)};
}

// Dense semi-infinite truncation of P_alpha(a) = T(a) + H_alpha(a).
Eigen::MatrixXd dense_p_alpha(const SymmetricSymbol& a, double alpha, Eigen::Index n) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    const Eigen::Index d = static_cast<Eigen::Index>(a.degree());
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = std::max<Eigen::Index>(0, r - d);
             c < std::min(n, r + d + 1); ++c)
            p(r, c) = a[static_cast<std::size_t>(std::abs(r - c))];
    const HankelBlock eta = eta_vector(a, alpha);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            p(r, c) += eta.entry(static_cast<std::size_t>(r + 1),
                                 static_cast<std::size_t>(c + 1));
    return p;
}

Eigen::VectorXd pad(const std::vector<double>& v, Eigen::Index n) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < v.size() && static_cast<Eigen::Index>(i) < n; ++i)
        out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

SqtMatrix random_sqt(std::uint64_t& state, Mode mode, double alpha,
                     std::size_t degree, Eigen::Index corr_rows, Eigen::Index rank) {
    SqtMatrix m;
    m.mode = mode;
    m.element.alpha = alpha;
    m.element.symbol = random_symbol(state, degree);
    m.correction.U.resize(corr_rows, rank);
    m.correction.V.resize(corr_rows, rank);
    for (Eigen::Index c = 0; c < rank; ++c)
        for (Eigen::Index r = 0; r < corr_rows; ++r) {
            m.correction.U(r, c) = 0.5 * xorshift_unit(state);
            m.correction.V(r, c) = 0.5 * xorshift_unit(state);
        }
    return m;
}

// Leading square window on which a dense product of truncations agrees with
// the truncation of the semi-infinite product.
Eigen::Index window(Eigen::Index n, const SqtMatrix& a, const SqtMatrix& b) {
    const Eigen::Index da = static_cast<Eigen::Index>(a.symbol().degree());
    const Eigen::Index db = static_cast<Eigen::Index>(b.symbol().degree());
    return n - da - db - std::max({a.correction.rows(), b.correction.rows(),
                                   a.correction.cols(), b.correction.cols()});
}

}  // namespace

Eigen::MatrixXd dense_a_alpha(Eigen::Index n, double alpha) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    a(0, 0) = alpha;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        a(i, i + 1) = 1.0;
        a(i + 1, i) = 1.0;
    }
    return a;
}

SymmetricSymbol random_symbol(std::uint64_t& state, std::size_t degree) {
    std::vector<double> c(degree + 1);
    for (double& v : c) v = xorshift_unit(state);
    if (c.back() == 0.0) c.back() = 0.5;
    return SymmetricSymbol(std::move(c));
}

std::vector<CheckResult> verify_basis() {
    std::vector<CheckResult> out;
    const double alphas[] = {0.0, 0.5, -0.3, 1.0, -1.0, 1.7};

    {  // A_alpha h_n = h_{n-1} + h_{n+1}, with h_0 = e_1
        double err = 0.0;
        for (double al : alphas)
            for (std::size_t n = 1; n <= 10; ++n) {
                const Eigen::Index len = static_cast<Eigen::Index>(n) + 2;
                Eigen::VectorXd lhs =
                    pad(apply_a_alpha(al, h_vector(n, al).entries), len);
                Eigen::VectorXd rhs = pad(h_vector(n + 1, al).entries, len);
                if (n == 1)
                    rhs(0) += 1.0;
                else
                    rhs += pad(h_vector(n - 1, al).entries, len);
                err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        out.push_back(make("h three-term recurrence", err, 1e-12));
    }
    {  // k_n = sum_i binom(n,i) h_{n-2i} (h_0 = e_1)
        double err = 0.0;
        for (double al : alphas)
            for (std::size_t n = 1; n <= 12; ++n) {
                const Eigen::Index len = static_cast<Eigen::Index>(n) + 1;
                const PowerExpansion e = power_to_basis(n);
                Eigen::VectorXd rhs = Eigen::VectorXd::Zero(len);
                for (std::size_t i = 0; i < e.coeffs.size(); ++i)
                    rhs += static_cast<double>(e.coeffs[i]) *
                           pad(h_vector(n - 2 * i, al).entries, len);
                const Eigen::VectorXd lhs = pad(k_vector(n, al), len);
                err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        out.push_back(make("k-vector binomial expansion", err, 1e-9));
    }
    {  // dense truncation: A^n == sum binom(n,i) P_{n-2i} + phi I
        const Eigen::Index n_big = 96, n_cmp = 64;
        double err = 0.0;
        for (double al : {0.5, -0.3, 1.0}) {
            const Eigen::MatrixXd a = dense_a_alpha(n_big, al);
            Eigen::MatrixXd an = Eigen::MatrixXd::Identity(n_big, n_big);
            for (std::size_t n = 1; n <= 12; ++n) {
                an = an * a;
                const PowerExpansion e = power_to_basis(n);
                Eigen::MatrixXd rhs = static_cast<double>(e.phi) *
                                      Eigen::MatrixXd::Identity(n_big, n_big);
                for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
                    std::vector<double> half(n - 2 * i + 1, 0.0);
                    half.back() = 1.0;
                    rhs += static_cast<double>(e.coeffs[i]) *
                           dense_p_alpha(SymmetricSymbol(half), al, n_big);
                }
                const double rel = std::max(1.0, an.topLeftCorner(n_cmp, n_cmp)
                                                     .cwiseAbs()
                                                     .maxCoeff());
                err = std::max(err, (an - rhs).topLeftCorner(n_cmp, n_cmp)
                                            .cwiseAbs()
                                            .maxCoeff() /
                                        rel);
            }
        }
        out.push_back(make("power-to-basis dense identity", err, 1e-9));
    }
    {  // P_n = sum_j c_j A^j with integer c_j
        const Eigen::Index n_big = 64, n_cmp = 40;
        double err = 0.0;
        for (double al : {0.5, -0.3}) {
            const Eigen::MatrixXd a = dense_a_alpha(n_big, al);
            for (std::size_t n = 0; n <= 10; ++n) {
                const std::vector<std::int64_t> c = basis_to_power(n);
                Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n_big, n_big);
                Eigen::MatrixXd aj = Eigen::MatrixXd::Identity(n_big, n_big);
                for (std::size_t j = 0; j < c.size(); ++j) {
                    rhs += static_cast<double>(c[j]) * aj;
                    aj = aj * a;
                }
                std::vector<double> half(n + 1, 0.0);
                half.back() = 1.0;
                const Eigen::MatrixXd lhs =
                    n == 0 ? Eigen::MatrixXd::Identity(n_big, n_big)
                           : dense_p_alpha(SymmetricSymbol(half), al, n_big);
                err = std::max(err, (lhs - rhs).topLeftCorner(n_cmp, n_cmp)
                                            .cwiseAbs()
                                            .maxCoeff());
            }
        }
        out.push_back(make("basis-to-power roundtrip", err, 1e-7));
    }
    {  // eta backward recurrence == sum_n a_n h_n
        double err = 0.0;
        std::uint64_t s = 0x9e3779b97f4a7c15ULL;
        for (double al : alphas)
            for (std::size_t d : {1u, 3u, 8u}) {
                const SymmetricSymbol a = random_symbol(s, d);
                const Eigen::Index len = static_cast<Eigen::Index>(d);
                Eigen::VectorXd rhs = Eigen::VectorXd::Zero(len);
                for (std::size_t n = 1; n <= d; ++n)
                    rhs += a[n] * pad(h_vector(n, al).entries, len);
                const Eigen::VectorXd lhs = pad(eta_vector(a, al).first_column, len);
                err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        out.push_back(make("eta equals basis-vector sum", err, 1e-12));
    }
    {  // closed-form Hankel norm equals the 1-norm of h_n
        double err = 0.0;
        for (double al : alphas)
            for (std::size_t n = 1; n <= 12; ++n) {
                double sum = 0.0;
                for (double v : h_vector(n, al).entries) sum += std::abs(v);
                err = std::max(err, std::abs(sum - hankel_norm_bound(n, al)));
            }
        out.push_back(make("Hankel norm closed form", err, 1e-10));
    }
    {  // special-case eta for alpha in {-1, 0, 1}
        double err = 0.0;
        std::uint64_t s = 0x2545f4914f6cdd1dULL;
        for (double al : {-1.0, 0.0, 1.0})
            for (std::size_t d : {2u, 5u}) {
                const SymmetricSymbol a = random_symbol(s, d);
                const Eigen::Index len = static_cast<Eigen::Index>(d) + 1;
                const Eigen::VectorXd lhs =
                    pad(special_case_form(al, a).first_column, len);
                const Eigen::VectorXd rhs = pad(eta_vector(a, al).first_column, len);
                err = std::max(err, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        out.push_back(make("special-case corner forms", err, 1e-13));
    }
    return out;
}

std::vector<CheckResult> verify_algebra(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::uint64_t s = seed | 1;

    {  // commutativity / associativity / distributivity of the symbol product
        double err = 0.0;
        for (int rep = 0; rep < 8; ++rep) {
            const SymmetricSymbol a = random_symbol(s, 3 + rep % 4);
            const SymmetricSymbol b = random_symbol(s, 2 + rep % 5);
            const SymmetricSymbol c = random_symbol(s, 1 + rep % 3);
            auto diff = [](const SymmetricSymbol& x, const SymmetricSymbol& y) {
                return sym_sub(x, y).max_coeff();
            };
            err = std::max(err, diff(sym_mul(a, b), sym_mul(b, a)));
            err = std::max(err, diff(sym_mul(sym_mul(a, b), c),
                                     sym_mul(a, sym_mul(b, c))));
            err = std::max(err, diff(sym_mul(a, sym_add(b, c)),
                                     sym_add(sym_mul(a, b), sym_mul(a, c))));
        }
        out.push_back(make("symbol ring laws", err, 1e-12));
    }
    {  // FFT product against direct Laurent convolution
        double err = 0.0;
        for (int rep = 0; rep < 6; ++rep) {
            const SymmetricSymbol a = random_symbol(s, 2 + rep);
            const SymmetricSymbol b = random_symbol(s, 1 + 2 * (rep % 3));
            const SymmetricSymbol p = sym_mul(a, b);
            auto full = [](const SymmetricSymbol& x, int i) {
                return x[static_cast<std::size_t>(std::abs(i))];
            };
            const int da = static_cast<int>(a.degree()), db = static_cast<int>(b.degree());
            for (int k = 0; k <= da + db; ++k) {
                double conv = 0.0;
                for (int i = -da; i <= da; ++i)
                    if (std::abs(k - i) <= db) conv += full(a, i) * full(b, k - i);
                err = std::max(err, std::abs(p[static_cast<std::size_t>(k)] - conv));
            }
        }
        out.push_back(make("product matches convolution", err, 1e-12));
    }
    {  // evaluation/interpolation roundtrip
        double err = 0.0;
        for (int rep = 0; rep < 6; ++rep) {
            const SymmetricSymbol a = random_symbol(s, 4 + rep);
            const std::size_t n = next_power_of_two_above(2 * a.degree());
            const SymmetricSymbol b = sym_interp_grid(sym_eval_grid(a, n));
            err = std::max(err, sym_sub(a, b).max_coeff());
        }
        out.push_back(make("eval/interp roundtrip", err, 1e-13));
    }
    {  // inversion residual on diagonally dominant symbols
        double err = 0.0, cond_ok = 1.0;
        for (int rep = 0; rep < 5; ++rep) {
            SymmetricSymbol a = random_symbol(s, 3 + rep);
            std::vector<double> c = a.coeffs();
            c[0] = 1.0 + 2.0 * a.wiener_norm();
            a = SymmetricSymbol(c);
            const InversionResult inv = sym_inv(a, 1e-14);
            const SymmetricSymbol one = sym_mul(a, sym_trim(inv.symbol));
            err = std::max(err,
                           sym_sub(one, SymmetricSymbol::constant(1.0)).max_coeff());
            if (inv.cond <= 0.0) cond_ok = 0.0;
        }
        out.push_back(make("inversion residual", err + (1.0 - cond_ok), 1e-12));
    }
    {  // known inverse of 3 + z + 1/z: c_0 = 1/sqrt(5), cond = 5
        const InversionResult inv = sym_inv(SymmetricSymbol({3.0, 1.0}), 1e-14);
        const double c0 = 1.0 / std::sqrt(5.0);
        const double ratio = (3.0 - std::sqrt(5.0)) / 2.0;  // |decay| per step
        double err = std::abs(inv.symbol[0] - c0);
        err = std::max(err, std::abs(inv.cond - 5.0) / 5.0);
        err = std::max(err, std::abs(std::abs(inv.symbol[6] / inv.symbol[5]) - ratio));
        out.push_back(make("tridiagonal inverse closed form", err, 1e-9));
    }
    {  // grid function map: identity and square
        double err = 0.0;
        for (int rep = 0; rep < 4; ++rep) {
            const SymmetricSymbol a = random_symbol(s, 3 + rep);
            err = std::max(err, sym_sub(sym_map_grid(a, [](double x) { return x; }, 1e-13),
                                        a)
                                    .max_coeff());
            err = std::max(err,
                           sym_sub(sym_map_grid(a, [](double x) { return x * x; }, 1e-13),
                                   sym_mul(a, a))
                               .max_coeff());
        }
        out.push_back(make("grid function map", err, 1e-11));
    }
    return out;
}

std::vector<CheckResult> verify_sqt(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::uint64_t s = (seed ^ 0xda942042e4dd58b5ULL) | 1;
    const Eigen::Index n_big = 160;

    auto rand_pair = [&](Mode mode, double alpha) {
        return std::pair<SqtMatrix, SqtMatrix>{
            random_sqt(s, mode, alpha, 3 + static_cast<std::size_t>(s % 3), 6, 2),
            random_sqt(s, mode, alpha, 2 + static_cast<std::size_t>(s % 4), 5, 3)};
    };

    {  // add/mul agree with dense truncations
        double err = 0.0;
        for (auto [mode, alpha] : std::initializer_list<std::pair<Mode, double>>{
                 {Mode::Algebra, 0.5}, {Mode::Algebra, -0.8}, {Mode::Toeplitz, 0.0}}) {
            const auto [a, b] = rand_pair(mode, alpha);
            const Eigen::MatrixXd da = sqt_to_dense(a, n_big);
            const Eigen::MatrixXd db = sqt_to_dense(b, n_big);
            const Eigen::Index w = window(n_big, a, b);
            err = std::max(err, (sqt_to_dense(sqt_add(a, b), n_big) - (da + db))
                                    .topLeftCorner(w, w)
                                    .cwiseAbs()
                                    .maxCoeff());
            err = std::max(err, (sqt_to_dense(sqt_mul(a, b), n_big) - da * db)
                                    .topLeftCorner(w, w)
                                    .cwiseAbs()
                                    .maxCoeff());
        }
        out.push_back(make("add/mul dense coherence", err, 1e-10));
    }
    {  // pre-compression factor widths
        bool pass = true;
        const auto [a, b] = rand_pair(Mode::Algebra, 0.4);
        if (sqt_mul_factors(a, b).k.rank() != a.correction.rank() + b.correction.rank())
            pass = false;
        const auto [ta, tb] = rand_pair(Mode::Toeplitz, 0.0);
        const Eigen::Index extra = static_cast<Eigen::Index>(
            std::min(ta.symbol().degree(), tb.symbol().degree()));
        if (sqt_mul_factors(ta, tb).k.rank() !=
            ta.correction.rank() + tb.correction.rank() + extra)
            pass = false;
        out.push_back({"product factor widths", pass,
                       pass ? "exact" : "width differs from k_A + k_B (+ overlap)"});
    }
    {  // mode conversion preserves the matrix
        double err = 0.0;
        const SqtMatrix a = random_sqt(s, Mode::Algebra, 0.6, 4, 6, 2);
        const Eigen::MatrixXd da = sqt_to_dense(a, n_big);
        const SqtMatrix t = sqt_convert(a, Mode::Toeplitz, 0.0);
        const SqtMatrix back = sqt_convert(t, Mode::Algebra, -0.35);
        err = std::max(err,
                       (sqt_to_dense(t, n_big) - da).cwiseAbs().maxCoeff());
        err = std::max(err,
                       (sqt_to_dense(back, n_big) - da).cwiseAbs().maxCoeff());
        out.push_back(make("mode conversion", err, 1e-11));
    }
    {  // structured inverse: A * inv(A) == I on the leading window
        double err = 0.0;
        for (Mode mode : {Mode::Algebra, Mode::Toeplitz}) {
            SqtMatrix a = random_sqt(s, mode, mode == Mode::Algebra ? 0.3 : 0.0, 3, 5, 2);
            std::vector<double> c = a.element.symbol.coeffs();
            c[0] = 2.0 + 2.0 * a.element.symbol.wiener_norm();
            a.element.symbol = SymmetricSymbol(c);
            a.correction = lowrank_scale(0.2, a.correction);
            const SqtMatrix prod = sqt_mul(a, sqt_inv(a, 1e-14));
            const Eigen::MatrixXd dense = sqt_to_dense(prod, n_big);
            const Eigen::Index w = n_big / 2;
            err = std::max(err, (dense.topLeftCorner(w, w) -
                                 Eigen::MatrixXd::Identity(w, w))
                                    .cwiseAbs()
                                    .maxCoeff());
        }
        out.push_back(make("inverse residual", err, 1e-10));
    }
    {  // infinity norm against a dense oracle
        double err = 0.0;
        const SqtMatrix a = random_sqt(s, Mode::Algebra, 0.45, 4, 6, 2);
        const Eigen::MatrixXd dense = sqt_to_dense(a, n_big);
        const double oracle = dense.cwiseAbs().rowwise().sum().maxCoeff();
        err = std::abs(sqt_norm_inf(a) - oracle) / std::max(1.0, oracle);
        out.push_back(make("infinity norm", err, 1e-12));
    }
    {  // matvec against the dense truncation
        double err = 0.0;
        const SqtMatrix a = random_sqt(s, Mode::Algebra, -0.5, 3, 6, 2);
        Eigen::VectorXd x(20);
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = xorshift_unit(s);
        const Eigen::VectorXd y = sqt_matvec(a, x);
        Eigen::VectorXd xp = Eigen::VectorXd::Zero(n_big);
        xp.head(x.size()) = x;
        const Eigen::VectorXd yd = sqt_to_dense(a, n_big) * xp;
        err = (y - yd.head(y.size())).cwiseAbs().maxCoeff();
        out.push_back(make("matvec", err, 1e-12));
    }
    {  // exact cancellation recompresses to rank zero
        const SqtMatrix a = random_sqt(s, Mode::Algebra, 0.7, 3, 6, 3);
        const SqtMatrix z = sqt_sub(a, a);
        const bool pass = z.correction.rank() == 0 && z.symbol().max_coeff() == 0.0;
        out.push_back({"cancellation compresses to zero", pass,
                       pass ? "rank 0" : "residual correction survives"});
    }
    {  // SQT1 text roundtrip
        const SqtMatrix a = random_sqt(s, Mode::Algebra, 0.25, 3, 5, 2);
        std::stringstream ss;
        write_sqt(ss, a);
        const SqtMatrix b = read_sqt(ss);
        double err = sym_sub(a.symbol(), b.symbol()).max_coeff();
        err = std::max(err, std::abs(a.alpha() - b.alpha()));
        const Eigen::Index n = 32;
        err = std::max(err, (lowrank_dense_block(a.correction, n) -
                             lowrank_dense_block(b.correction, n))
                                .cwiseAbs()
                                .maxCoeff());
        out.push_back(make("file format roundtrip", err, 0.0));
    }
    return out;
}

std::vector<CheckResult> verify_finite() {
    std::vector<CheckResult> out;
    const std::pair<double, double> corners[] = {
        {0.0, 0.0}, {1.0, -1.0}, {0.5, 0.8}, {-0.6, 0.3}};

    {  // basis(1) is the generator itself
        double err = 0.0;
        for (auto [al, be] : corners)
            for (Eigen::Index m : {2, 5, 12})
                err = std::max(err, (finite_basis(1, m, al, be) - finite_a(m, al, be))
                                        .cwiseAbs()
                                        .maxCoeff());
        out.push_back(make("first basis matrix", err, 0.0));
    }
    {  // binomial expansion reproduces dense powers
        double err = 0.0;
        for (auto [al, be] : corners) {
            const Eigen::Index m = 12;
            const Eigen::MatrixXd a = finite_a(m, al, be);
            Eigen::MatrixXd an = a;
            for (Eigen::Index n = 1; n <= 8; ++n) {
                err = std::max(err, (finite_power_expand(n, m, al, be) - an)
                                        .cwiseAbs()
                                        .maxCoeff());
                an = an * a;
            }
        }
        out.push_back(make("finite power expansion", err, 1e-10));
    }
    {  // flipping both corners transposes across the anti-diagonal
        double err = 0.0;
        for (auto [al, be] : corners) {
            const Eigen::Index m = 9;
            Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index i = 0; i < m; ++i) j(i, m - 1 - i) = 1.0;
            for (Eigen::Index i = 0; i < m; ++i)
                err = std::max(err, (j * finite_basis(i, m, al, be) * j -
                                     finite_basis(i, m, be, al))
                                        .cwiseAbs()
                                        .maxCoeff());
        }
        out.push_back(make("corner-swap symmetry", err, 0.0));
    }
    {  // sine transform diagonalizes the zero-corner algebra
        double err = 0.0;
        for (Eigen::Index m : {6, 11})
            for (Eigen::Index i = 0; i < m; ++i) {
                const DiagCheckResult r = finite_diag_check(i, m, 0.0, 0.0);
                err = std::max({err, r.max_offdiag, r.max_diag_error});
            }
        out.push_back(make("sine-transform diagonalization", err, 1e-12));
    }
    return out;
}

std::vector<CheckResult> verify_all(std::uint64_t seed) {
    std::vector<CheckResult> out = verify_basis();
    for (const auto& v : {verify_algebra(seed), verify_sqt(seed), verify_finite()})
        out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace sqt
