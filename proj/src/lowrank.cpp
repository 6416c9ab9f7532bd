#include "sqt/lowrank.hpp"

#include <algorithm>
#include <cstdint>

namespace sqt {

LowRankCorrection lowrank_concat(const LowRankCorrection& a, const LowRankCorrection& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const Eigen::Index m = std::max(a.rows(), b.rows());
    const Eigen::Index n = std::max(a.cols(), b.cols());
    const Eigen::Index ka = a.rank(), kb = b.rank();
    LowRankCorrection c;
    c.U = Eigen::MatrixXd::Zero(m, ka + kb);
    c.V = Eigen::MatrixXd::Zero(n, ka + kb);
    c.U.topLeftCorner(a.rows(), ka) = a.U;
    c.U.topRightCorner(b.rows(), kb) = b.U;
    c.V.topLeftCorner(a.cols(), ka) = a.V;
    c.V.topRightCorner(b.cols(), kb) = b.V;
    return c;
}

LowRankCorrection lowrank_scale(double s, const LowRankCorrection& k) {
    LowRankCorrection r = k;
    r.U *= s;
    return r;
}

namespace {

// Shrink the support: trailing rows whose largest possible contribution
// to U V^T falls below the threshold are dropped, so supports do not
// grow without bound across repeated arithmetic.
// Per-row bound on the product: sum_j |m(i,j)| * max_r |other(r,j)|.
// Scaling column-by-column matters — each retained component carries its
// own sqrt(sigma) on both sides, so a far row can look sizable in the
// factor while its actual contribution to U V^T is negligible.
void trim_factor_rows(Eigen::MatrixXd& m, const Eigen::MatrixXd& other,
                      double thresh) {
    const Eigen::VectorXd col_max = other.cwiseAbs().colwise().maxCoeff();
    Eigen::Index rows = m.rows();
    while (rows > 1 && m.row(rows - 1).cwiseAbs().dot(col_max) <= thresh) --rows;
    if (rows < m.rows()) m.conservativeResize(rows, Eigen::NoChange);
}

// Randomized range finder for factor widths where the dense QR + SVD pipeline
// becomes the dominant cost of a solver iteration (Toeplitz-mode products
// leak a Hankel block as wide as the shorter symbol). Deterministic: the
// probe matrix comes from a fixed-seed xorshift, so identical inputs give
// identical output. Falls back to widening the probe space until the trailing
// singular value drops below the compression threshold.
LowRankCorrection compress_randomized(const LowRankCorrection& k, double tol) {
    const Eigen::Index m = k.rows(), n = k.cols(), r = k.rank();
    const double input_scale = k.U.norm() * k.V.norm();

    for (Eigen::Index p = 64; ; p = std::min(p * 2, std::min({m, n, r}))) {
        std::uint64_t s = 0x9e3779b97f4a7c15ULL;
        Eigen::MatrixXd omega(n, p);
        for (Eigen::Index j = 0; j < p; ++j)
            for (Eigen::Index i = 0; i < n; ++i) {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                omega(i, j) = 2.0 * (static_cast<double>(s >> 11) * 0x1.0p-53) - 1.0;
            }
        // probe the operator through its factors: Y = (U V^T) Omega
        const Eigen::MatrixXd y = k.U * (k.V.transpose() * omega);
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
        const Eigen::MatrixXd q =
            qr.householderQ() * Eigen::MatrixXd::Identity(m, std::min(m, p));
        const Eigen::MatrixXd b = (q.transpose() * k.U) * k.V.transpose();

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(
            b, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const double thresh =
            sv.size() > 0 ? tol * std::max(sv(0), input_scale) : 0.0;
        const bool resolved = p >= std::min({m, n, r}) ||
                              (sv.size() > 0 && sv(sv.size() - 1) <= 0.5 * thresh);
        if (!resolved) continue;  // spectrum not yet below threshold: widen

        Eigen::Index keep = 0;
        while (keep < sv.size() && sv(keep) > thresh) ++keep;
        if (keep == 0) return LowRankCorrection{};
        const Eigen::VectorXd scale = sv.head(keep).cwiseSqrt();
        LowRankCorrection c;
        c.U = q * svd.matrixU().leftCols(keep) * scale.asDiagonal();
        c.V = svd.matrixV().leftCols(keep) * scale.asDiagonal();
        trim_factor_rows(c.U, c.V, thresh);
        trim_factor_rows(c.V, c.U, thresh);
        return c;
    }
}

}  // namespace

LowRankCorrection lowrank_compress(const LowRankCorrection& k, double tol) {
    if (tol < 0.0 || k.empty()) return k;
    const Eigen::Index m = k.rows(), n = k.cols(), r = k.rank();

    // degenerate support
    if (m == 0 || n == 0) return LowRankCorrection{};

    // wide factors (Toeplitz-mode products leak a Hankel block as wide as
    // the shorter symbol): sample the range instead of full orthogonalization
    if (r >= 192 && std::min(m, n) >= 192) return compress_randomized(k, tol);

    const Eigen::Index ru = std::min(m, r), rv = std::min(n, r);
    Eigen::HouseholderQR<Eigen::MatrixXd> qru(k.U), qrv(k.V);
    const Eigen::MatrixXd qu =
        qru.householderQ() * Eigen::MatrixXd::Identity(m, ru);
    const Eigen::MatrixXd qv =
        qrv.householderQ() * Eigen::MatrixXd::Identity(n, rv);
    const Eigen::MatrixXd rru =
        qru.matrixQR().topRows(ru).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd rrv =
        qrv.matrixQR().topRows(rv).triangularView<Eigen::Upper>();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rru * rrv.transpose(),
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    // Threshold against the pre-cancellation magnitude of the factors, not
    // only sigma_1: an exactly cancelling sum must compress to rank zero
    // even though its surviving sigmas are pure roundoff.
    const double input_scale = rru.norm() * rrv.norm();
    const double thresh =
        sv.size() > 0 ? tol * std::max(sv(0), input_scale) : 0.0;
    Eigen::Index keep = 0;
    while (keep < sv.size() && sv(keep) > thresh) ++keep;
    if (keep == 0) return LowRankCorrection{};

    const Eigen::VectorXd scale = sv.head(keep).cwiseSqrt();
    LowRankCorrection c;
    c.U = qu * svd.matrixU().leftCols(keep) * scale.asDiagonal();
    c.V = qv * svd.matrixV().leftCols(keep) * scale.asDiagonal();

    trim_factor_rows(c.U, c.V, thresh);
    trim_factor_rows(c.V, c.U, thresh);
    return c;
}

double lowrank_norm_inf(const LowRankCorrection& k) {
    if (k.empty()) return 0.0;
    return (k.U * k.V.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::MatrixXd lowrank_dense_block(const LowRankCorrection& k, Eigen::Index n) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    if (!k.empty()) {
        const Eigen::Index rm = std::min(n, k.rows()), rn = std::min(n, k.cols());
        d.topLeftCorner(rm, rn) =
            k.U.topRows(rm) * k.V.topRows(rn).transpose();
    }
    return d;
}

}  // namespace sqt
