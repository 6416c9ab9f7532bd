#include "sqt/sqt_matrix.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sqt/errors.hpp"
#include "sqt/kernels.hpp"

namespace sqt {

namespace {

void require_compatible(const SqtMatrix& a, const SqtMatrix& b) {
    if (a.mode != b.mode) throw ModeMismatch();
    if (a.mode == Mode::Algebra && a.alpha() != b.alpha()) throw AlphaMismatch();
}

Eigen::MatrixXd pad_rows(const Eigen::MatrixXd& m, Eigen::Index rows) {
    if (m.rows() >= rows) return m;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(rows, m.cols());
    p.topRows(m.rows()) = m;
    return p;
}

// Hankel block as an explicit low-rank factor pair (U = dense block, V = I).
LowRankCorrection hankel_correction(const HankelBlock& h, double sign) {
    const Eigen::Index d = static_cast<Eigen::Index>(h.support());
    if (d == 0) return {};
    LowRankCorrection k;
    k.U = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 1; i <= d; ++i)
        for (Eigen::Index j = 1; j + i - 1 <= d; ++j)
            k.U(i - 1, j - 1) = sign * h.first_column[i + j - 2];
    k.V = Eigen::MatrixXd::Identity(d, d);
    return k;
}

void drop_trailing_rows(Eigen::MatrixXd& m, double row_tol) {
    if (m.rows() == 0) return;
    const Eigen::VectorXd norms = m.cwiseAbs().rowwise().maxCoeff();
    const double thresh = row_tol * norms.maxCoeff();
    Eigen::Index rows = m.rows();
    while (rows > 0 && norms(rows - 1) <= thresh) --rows;
    m.conservativeResize(rows, m.cols());
}

// Factors of the Hankel-times-Hankel product term H(a_-) H(b_+) that a
// Toeplitz product leaks into the corner: entries a_{i+k-1}
// and b_{j+k-1}, inner dimension min(d_a, d_b).
LowRankCorrection hankel_product_correction(const SymmetricSymbol& a,
                                            const SymmetricSymbol& b, double sign) {
    const Eigen::Index da = static_cast<Eigen::Index>(a.degree());
    const Eigen::Index db = static_cast<Eigen::Index>(b.degree());
    const Eigen::Index kk = std::min(da, db);
    if (kk == 0) return {};
    LowRankCorrection k;
    k.U = Eigen::MatrixXd::Zero(da, kk);
    k.V = Eigen::MatrixXd::Zero(db, kk);
    for (Eigen::Index i = 1; i <= da; ++i)
        for (Eigen::Index c = 1; c <= kk; ++c)
            if (i + c - 1 <= da) k.U(i - 1, c - 1) = sign * a[i + c - 1];
    for (Eigen::Index j = 1; j <= db; ++j)
        for (Eigen::Index c = 1; c <= kk; ++c)
            if (j + c - 1 <= db) k.V(j - 1, c - 1) = b[j + c - 1];
    return k;
}

}  // namespace

const char* mode_name(Mode m) { return m == Mode::Algebra ? "ALG" : "TOE"; }

SqtMatrix sqt_from_symbol(double alpha, const SymmetricSymbol& a) {
    return {Mode::Algebra, {alpha, a}, {}};
}

SqtMatrix sqt_toeplitz(const SymmetricSymbol& a, LowRankCorrection k) {
    return {Mode::Toeplitz, {0.0, a}, std::move(k)};
}

SqtMatrix sqt_identity(Mode mode, double alpha) {
    return {mode, {alpha, SymmetricSymbol::constant(1.0)}, {}};
}

SqtMatrix sqt_zero(Mode mode, double alpha) {
    return {mode, {alpha, SymmetricSymbol::constant(0.0)}, {}};
}

SqtMatrix sqt_convert(const SqtMatrix& a, Mode target, double alpha, double tol) {
    // correction as seen from the plain Toeplitz representation
    LowRankCorrection toe = a.correction;
    if (a.mode == Mode::Algebra)
        toe = lowrank_concat(toe, hankel_correction(eta_vector(a.symbol(), a.alpha()), 1.0));
    if (target == Mode::Toeplitz)
        return {Mode::Toeplitz, {alpha, a.symbol()}, lowrank_compress(toe, tol)};
    LowRankCorrection alg =
        lowrank_concat(toe, hankel_correction(eta_vector(a.symbol(), alpha), -1.0));
    return {Mode::Algebra, {alpha, a.symbol()}, lowrank_compress(alg, tol)};
}

SqtMatrix sqt_add(const SqtMatrix& a, const SqtMatrix& b, double tol) {
    require_compatible(a, b);
    return {a.mode,
            {a.alpha(), sym_add(a.symbol(), b.symbol())},
            lowrank_compress(lowrank_concat(a.correction, b.correction), tol)};
}

SqtMatrix sqt_sub(const SqtMatrix& a, const SqtMatrix& b, double tol) {
    return sqt_add(a, sqt_scale(-1.0, b), tol);
}

SqtMatrix sqt_scale(double s, const SqtMatrix& a) {
    return {a.mode, {a.alpha(), sym_scale(s, a.symbol())}, lowrank_scale(s, a.correction)};
}

Eigen::MatrixXd structured_apply(Mode mode, const AlgebraElement& e,
                                 const Eigen::MatrixXd& x, double row_tol) {
    const Eigen::Index d = static_cast<Eigen::Index>(e.symbol.degree());
    const Eigen::Index m = x.rows(), k = x.cols();
    if (m == 0 || k == 0) return Eigen::MatrixXd(0, k);
    const SymmetricSymbol& a = e.symbol;

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m + d, k);
    if (d == 0) {
        out = a[0] * x;
    } else if (d <= 32) {
        // short stencils: direct band application
        for (Eigen::Index c = 0; c < k; ++c)
            for (Eigen::Index i = 1; i <= m + d; ++i) {
                double s = 0.0;
                for (Eigen::Index off = -d; off <= d; ++off) {
                    const Eigen::Index j = i + off;
                    if (j >= 1 && j <= m) s += a[std::abs(off)] * x(j - 1, c);
                }
                out(i - 1, c) = s;
            }
    } else {
        // long stencils: FFT convolution with the full Laurent stencil
        const std::size_t n = next_power_of_two_above(
            static_cast<std::size_t>(m + 2 * d));
        cvector stencil(n, {0.0, 0.0});
        for (Eigen::Index j = 0; j <= 2 * d; ++j) stencil[j] = a[std::abs(j - d)];
        fft(stencil, -1);
        const double inv = 1.0 / static_cast<double>(n);
        cvector p(n);
        for (Eigen::Index c = 0; c < k; ++c) {
            std::fill(p.begin(), p.end(), std::complex<double>{0.0, 0.0});
            for (Eigen::Index j = 0; j < m; ++j) p[j] = x(j, c);
            fft(p, -1);
            kernels::cmul(p.data(), stencil.data(), p.data(), n);
            fft(p, +1);
            for (Eigen::Index i = 1; i <= m + d; ++i)
                out(i - 1, c) = p[i - 1 + d].real() * inv;
        }
    }

    if (mode == Mode::Algebra && d >= 1) {
        const HankelBlock eta = eta_vector(a, e.alpha);
        const Eigen::Index de = static_cast<Eigen::Index>(eta.support());
        const Eigen::Index mm = std::min(m, de);
        if (de <= 64) {
            for (Eigen::Index c = 0; c < k; ++c)
                for (Eigen::Index i = 1; i <= de; ++i) {
                    double s = 0.0;
                    for (Eigen::Index j = 1; j <= mm && i + j - 1 <= de; ++j)
                        s += eta.first_column[i + j - 2] * x(j - 1, c);
                    out(i - 1, c) += s;
                }
        } else {
            // y_i = sum_j eta_{i+j-1} x_j as a convolution with x reversed
            const std::size_t n2 =
                next_power_of_two_above(static_cast<std::size_t>(2 * de));
            cvector eh(n2, {0.0, 0.0});
            for (Eigen::Index j = 0; j < de; ++j) eh[j] = eta.first_column[j];
            fft(eh, -1);
            const double inv2 = 1.0 / static_cast<double>(n2);
            cvector q(n2);
            for (Eigen::Index c = 0; c < k; ++c) {
                std::fill(q.begin(), q.end(), std::complex<double>{0.0, 0.0});
                for (Eigen::Index j = 0; j < mm; ++j) q[de - 1 - j] = x(j, c);
                fft(q, -1);
                kernels::cmul(q.data(), eh.data(), q.data(), n2);
                fft(q, +1);
                for (Eigen::Index i = 1; i <= de; ++i)
                    out(i - 1, c) += q[i + de - 2].real() * inv2;
            }
        }
    }

    drop_trailing_rows(out, row_tol);
    return out;
}

MulFactors sqt_mul_factors(const SqtMatrix& a, const SqtMatrix& b) {
    require_compatible(a, b);
    MulFactors f;
    f.c = sym_mul(a.symbol(), b.symbol());

    const LowRankCorrection& ka = a.correction;
    const LowRankCorrection& kb = b.correction;

    // [P(a) U_B | U_A] [V_B | P(b)^T V_A + V_B (U_B^T V_A)]^T
    LowRankCorrection left, right;
    if (!kb.empty()) {
        left.U = structured_apply(a.mode, a.element, kb.U);
        left.V = kb.V;
    }
    if (!ka.empty()) {
        // structured parts are symmetric, so P(b)^T V_A = P(b) V_A
        Eigen::MatrixXd v = structured_apply(b.mode, b.element, ka.V);
        if (!kb.empty()) {
            const Eigen::Index q = std::min(kb.U.rows(), ka.V.rows());
            const Eigen::MatrixXd core =
                kb.U.topRows(q).transpose() * ka.V.topRows(q);
            const Eigen::Index rows = std::max(v.rows(), kb.V.rows());
            v = pad_rows(v, rows);
            v.topRows(kb.V.rows()) += kb.V * core;
        }
        right.U = ka.U;
        right.V = v;
    }
    f.k = lowrank_concat(left, right);

    if (a.mode == Mode::Toeplitz) {
        // T(a)T(b) = T(ab) - H(a_-)H(b_+)
        f.k = lowrank_concat(f.k, hankel_product_correction(a.symbol(), b.symbol(), -1.0));
    }
    return f;
}

SqtMatrix sqt_mul(const SqtMatrix& a, const SqtMatrix& b, double tol) {
    MulFactors f = sqt_mul_factors(a, b);
    return {a.mode, {a.alpha(), std::move(f.c)}, lowrank_compress(f.k, tol)};
}

double estimate_inversion_eps(const SymmetricSymbol& a, double floor_eps) {
    const std::size_t n = std::max<std::size_t>(
        512, next_power_of_two_above(a.degree()) * 2);
    cvector probe(n, {0.0, 0.0});
    probe[0] = a[0];
    for (std::size_t i = 1; i <= a.degree(); ++i) {
        probe[i] += a[i];
        probe[n - i] += a[i];
    }
    fft(probe, +1);
    double ymax = 0.0, ymin = std::numeric_limits<double>::infinity();
    for (const auto& v : probe) {
        ymax = std::max(ymax, std::abs(v));
        ymin = std::min(ymin, std::abs(v));
    }
    if (ymin == 0.0) throw ZeroOnCircle();
    return std::max(floor_eps, 2.0 * 2.22e-16 * ymax / ymin);
}

InversionResult sym_inv_auto(const SymmetricSymbol& a, double floor_eps) {
    return sym_inv(a, estimate_inversion_eps(a, floor_eps));
}

SqtMatrix sqt_inv(const SqtMatrix& a, double eps, double tol) {
    if (a.mode == Mode::Toeplitz) {
        // fold the Hankel corner terms of the product expansion into the
        // correction by passing through the alpha = 0 algebra representation
        SqtMatrix alg = sqt_convert(a, Mode::Algebra, 0.0, tol);
        SqtMatrix inv = sqt_inv(alg, eps, tol);
        return sqt_convert(inv, Mode::Toeplitz, 0.0, tol);
    }

    const InversionResult ir = sym_inv(a.symbol(), eps);
    const AlgebraElement pinv{a.alpha(), sym_trim(ir.symbol)};
    if (a.correction.empty()) return {a.mode, pinv, {}};

    // SWM on I + P(1/a) U V^T
    const Eigen::MatrixXd w = structured_apply(Mode::Algebra, pinv, a.correction.U);
    const Eigen::MatrixXd vp = structured_apply(Mode::Algebra, pinv, a.correction.V);
    const Eigen::Index k = a.correction.rank();
    const Eigen::Index q = std::min(a.correction.V.rows(), w.rows());
    const Eigen::MatrixXd s = Eigen::MatrixXd::Identity(k, k) +
                              a.correction.V.topRows(q).transpose() * w.topRows(q);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(s);
    if (!lu.isInvertible()) throw SingularSmallBlock();
    LowRankCorrection kc;
    kc.U = -w * lu.inverse();
    kc.V = vp;
    return {a.mode, pinv, lowrank_compress(kc, tol)};
}

double sqt_norm_inf(const SqtMatrix& a) {
    const SymmetricSymbol& s = a.symbol();
    const Eigen::Index d = static_cast<Eigen::Index>(s.degree());
    HankelBlock eta;
    if (a.mode == Mode::Algebra) eta = eta_vector(s, a.alpha());
    const Eigen::Index de = static_cast<Eigen::Index>(eta.support());
    const Eigen::Index m = a.correction.rows(), nv = a.correction.cols();
    const double wiener = s.wiener_norm();

    const Eigen::Index n0 = std::max({d, de, m});
    if (n0 == 0) return wiener;
    const Eigen::MatrixXd kd = a.correction.dense();

    double best = wiener;  // rows beyond n0 carry the full stencil
    for (Eigen::Index i = 1; i <= n0; ++i) {
        const Eigen::Index ji = std::max({nv, de, i + d});
        double rs = 0.0;
        for (Eigen::Index j = 1; j <= ji; ++j) {
            double t = std::abs(j - i) <= d ? s[std::abs(j - i)] : 0.0;
            if (i + j - 1 <= de) t += eta.first_column[i + j - 2];
            if (i <= m && j <= nv) t += kd(i - 1, j - 1);
            rs += std::abs(t);
        }
        best = std::max(best, rs);
    }
    return best;
}

double correction_norm_inf(const SqtMatrix& a) { return lowrank_norm_inf(a.correction); }

Eigen::VectorXd sqt_matvec(const SqtMatrix& a, const Eigen::VectorXd& x) {
    Eigen::MatrixXd y = structured_apply(a.mode, a.element, x, 0.0);
    const Eigen::Index d = static_cast<Eigen::Index>(a.symbol().degree());
    Eigen::Index rows = std::max(y.rows(), x.size() + d);
    if (!a.correction.empty()) {
        const Eigen::Index nv = a.correction.cols();
        Eigen::VectorXd xq = Eigen::VectorXd::Zero(nv);
        const Eigen::Index q = std::min(nv, x.size());
        xq.head(q) = x.head(q);
        const Eigen::VectorXd yc = a.correction.U * (a.correction.V.transpose() * xq);
        rows = std::max(rows, yc.size());
        y = pad_rows(y, rows);
        y.col(0).head(yc.size()) += yc;
    } else {
        y = pad_rows(y, rows);
    }
    return y.col(0);
}

Eigen::MatrixXd sqt_to_dense(const SqtMatrix& a, Eigen::Index n) {
    const SymmetricSymbol& s = a.symbol();
    const Eigen::Index d = static_cast<Eigen::Index>(s.degree());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = std::max<Eigen::Index>(0, i - d);
             j < std::min(n, i + d + 1); ++j)
            m(i, j) = s[std::abs(i - j)];
    if (a.mode == Mode::Algebra) {
        const HankelBlock eta = eta_vector(s, a.alpha());
        const Eigen::Index de = static_cast<Eigen::Index>(eta.support());
        for (Eigen::Index i = 1; i <= std::min(n, de); ++i)
            for (Eigen::Index j = 1; j <= n && i + j - 1 <= de; ++j)
                m(i - 1, j - 1) += eta.first_column[i + j - 2];
    }
    if (!a.correction.empty()) {
        const Eigen::Index rm = std::min(n, a.correction.rows());
        const Eigen::Index rn = std::min(n, a.correction.cols());
        m.topLeftCorner(rm, rn) +=
            a.correction.U.topRows(rm) * a.correction.V.topRows(rn).transpose();
    }
    return m;
}

void write_sqt(std::ostream& os, const SqtMatrix& a) {
    const auto old = os.precision(17);
    os << "SQT1 " << mode_name(a.mode) << "\n";
    os << "alpha " << a.alpha() << "\n";
    os << "symbol";
    for (double v : a.symbol().coeffs()) os << " " << v;
    os << "\n";
    os << "correction " << a.correction.rows() << " " << a.correction.cols() << " "
       << a.correction.rank() << "\n";
    for (Eigen::Index i = 0; i < a.correction.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.correction.rank(); ++j)
            os << (j ? " " : "") << a.correction.U(i, j);
        os << "\n";
    }
    for (Eigen::Index i = 0; i < a.correction.cols(); ++i) {
        for (Eigen::Index j = 0; j < a.correction.rank(); ++j)
            os << (j ? " " : "") << a.correction.V(i, j);
        os << "\n";
    }
    os.precision(old);
}

SqtMatrix read_sqt(std::istream& is) {
    std::string tag, mode;
    if (!(is >> tag >> mode) || tag != "SQT1" || (mode != "ALG" && mode != "TOE"))
        throw BadInput("not an SQT1 record");
    SqtMatrix a;
    a.mode = mode == "ALG" ? Mode::Algebra : Mode::Toeplitz;

    double alpha;
    if (!(is >> tag >> alpha) || tag != "alpha") throw BadInput("SQT1: missing alpha line");
    a.element.alpha = alpha;

    if (!(is >> tag) || tag != "symbol") throw BadInput("SQT1: missing symbol line");
    std::string rest;
    std::getline(is, rest);
    std::istringstream ss(rest);
    std::vector<double> coeffs;
    double v;
    while (ss >> v) coeffs.push_back(v);
    if (coeffs.empty()) throw BadInput("SQT1: empty symbol");
    a.element.symbol = SymmetricSymbol(std::move(coeffs));

    Eigen::Index m, n, k;
    if (!(is >> tag >> m >> n >> k) || tag != "correction" || m < 0 || n < 0 || k < 0)
        throw BadInput("SQT1: missing correction header");
    if (k > 0) {
        a.correction.U.resize(m, k);
        a.correction.V.resize(n, k);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < k; ++j)
                if (!(is >> a.correction.U(i, j))) throw BadInput("SQT1: truncated U factor");
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < k; ++j)
                if (!(is >> a.correction.V(i, j))) throw BadInput("SQT1: truncated V factor");
    }
    return a;
}

}  // namespace sqt
