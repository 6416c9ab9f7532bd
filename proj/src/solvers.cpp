#include "sqt/solvers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "sqt/errors.hpp"

namespace sqt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fill_shape(SolveReport& r, const SqtMatrix& x) {
    r.symbol_size = x.symbol().degree() + 1;
    r.correction_rows = static_cast<std::size_t>(x.correction.rows());
    r.correction_cols = static_cast<std::size_t>(x.correction.cols());
    r.correction_rank = static_cast<std::size_t>(x.correction.rank());
}

SqtMatrix inv_auto(const SqtMatrix& m) {
    return sqt_inv(m, estimate_inversion_eps(m.symbol()));
}

// Compression threshold for the step difference X_{k+1} - X_k before the
// stop quantities are measured. Slightly looser than the storage threshold:
// the difference of two stored-and-compressed iterates carries components at
// the storage noise floor which are not part of the genuine step, and keeping
// them in the measurement stalls the observed decay near the tolerance.
constexpr double kStopCompressTol = 1.225e-15;

// Conditioning cutoff for the per-step inversion of I - A X - B. The symbol
// stays uniformly bounded away from zero here, so the cutoff can sit at the
// tightest level the adaptive grid inversion supports; a looser cutoff leaks
// inversion noise into the stop measurement.
constexpr double kUInverseEps = 1e-15;

// Coefficients of the residual symbol below working precision relative to the
// size of the operands are rounding debris of the evaluation, not information
// about the iterate; zero them before taking the norm so the reported
// residual measures the defect of X rather than the length of the pipeline
// that computed the residual.
SymmetricSymbol sym_floor(const SymmetricSymbol& a, double floor) {
    std::vector<double> c = a.coeffs();
    for (double& v : c)
        if (std::abs(v) < floor) v = 0.0;
    return sym_trim(SymmetricSymbol(std::move(c)), 0.0);
}

// The incremental square-root form is numerically stable but not
// self-correcting: rounding committed in the early steps, when the increment
// is still large, persists in the accumulated sum as a small sign-coherent
// corner defect. One corner-Newton step removes it exactly — solve the
// Sylvester equation X D + D X = -(X^2 - A) for the finite corner D on a
// dense window through the eigendecomposition of the windowed X. The cheap
// one-sided approximation D ~ -X^{-1} R / 2 is not usable here: it leaves the
// non-commuting part of R amplified by cond(X) and diverges on the badly
// conditioned instances. Returns false (and leaves X alone) when the defect
// corner is too wide to treat at dense cost.
bool sqrt_corner_refine(SqtMatrix& x, const SqtMatrix& a) {
    const SqtMatrix r = sqt_sub(sqt_mul(x, x), a);
    if (r.correction.empty()) return false;
    const Eigen::Index m =
        std::max(r.correction.rows(), r.correction.cols()) + 256;
    if (m > 2048) return false;

    const Eigen::MatrixXd xwin = sqt_to_dense(x, m);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xwin);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const Eigen::MatrixXd& q = es.eigenvectors();

    // rotate the low-rank residual corner into the eigenbasis and divide by
    // the eigenvalue sums; the residual symbol part is already at the
    // rounding floor and is left to the pointwise polish
    Eigen::MatrixXd s =
        (q.topRows(r.correction.rows()).transpose() * r.correction.U) *
        (q.topRows(r.correction.cols()).transpose() * r.correction.V).transpose();
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) s(i, j) /= -(lam(i) + lam(j));
    const Eigen::MatrixXd delta = q * s * q.transpose();

    // append D as a truncated spectral factorization (D is symmetric)
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ed(delta);
    const Eigen::VectorXd& mu = ed.eigenvalues();
    const double mumax = mu.cwiseAbs().maxCoeff();
    if (mumax == 0.0) return false;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < m; ++i)
        if (std::abs(mu(i)) > 1e-4 * mumax) keep.push_back(i);
    LowRankCorrection kd;
    kd.U.resize(m, static_cast<Eigen::Index>(keep.size()));
    kd.V.resize(m, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        kd.U.col(static_cast<Eigen::Index>(c)) =
            ed.eigenvectors().col(keep[c]) * mu(keep[c]);
        kd.V.col(static_cast<Eigen::Index>(c)) = ed.eigenvectors().col(keep[c]);
    }
    x.correction = lowrank_concat(x.correction, kd);
    return true;
}

double qme_residual(const SqtMatrix& a, const SqtMatrix& b, const SqtMatrix& c,
                    const SqtMatrix& x) {
    SqtMatrix r =
        sqt_sub(sqt_add(sqt_add(sqt_mul(a, sqt_mul(x, x)), sqt_mul(b, x)), c), x);
    const double scale = std::max(1.0, sqt_norm_inf(x));
    r.element.symbol = sym_floor(r.symbol(), kTrimTol * scale);
    return sqt_norm_inf(r);
}

}  // namespace

const char* variant_name(QmeVariant v) {
    switch (v) {
        case QmeVariant::Natural: return "natural";
        case QmeVariant::Traditional: return "traditional";
        default: return "ubased";
    }
}

std::string QmeProblem::validate() const {
    std::ostringstream warn;
    const double s1 = a.symbol().eval(0.0) + b.symbol().eval(0.0) + c.symbol().eval(0.0);
    if (std::abs(s1 - 1.0) > 1e-12)
        warn << "a(1)+b(1)+c(1) = " << s1 << " differs from 1; ";

    // rows inside the finite support of A+B+C must sum to 1
    const SqtMatrix sum = sqt_add(sqt_add(a, b), c);
    const Eigen::Index d = static_cast<Eigen::Index>(sum.symbol().degree());
    const Eigen::Index n0 =
        std::max<Eigen::Index>({d, sum.correction.rows(), sum.correction.cols(), 1});
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n0 + 2 * d + 4);
    const Eigen::VectorXd rows = sqt_matvec(sum, ones);
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(n0, rows.size()); ++i) {
        if (std::abs(rows(i) - 1.0) > 1e-10) {
            warn << "row " << i + 1 << " of A+B+C sums to " << rows(i) << "; ";
            break;
        }
    }
    return warn.str();
}

QmeSolution qme_solve(const QmeProblem& p) {
    const auto t0 = Clock::now();
    const Mode mode = p.a.mode;
    const double alpha = p.a.alpha();
    const SqtMatrix id = sqt_identity(mode, alpha);

    SqtMatrix minv;  // (I - B)^{-1}, Traditional only, computed once
    if (p.variant == QmeVariant::Traditional) minv = inv_auto(sqt_sub(id, p.b));

    // The iterate's symbol is evolved pointwise on a shared root-of-unity
    // grid and only interpolated back per step. Consecutive iterates then
    // share their rounding history, so the difference symbol driving the
    // stop test carries fresh per-step noise only, not the accumulated
    // coefficient noise of independent convolution pipelines. The matrix
    // recurrence below still runs in full to propagate the correction.
    const std::size_t cap = max_grid_size();
    const std::size_t dmax = std::max({p.a.symbol().degree(), p.b.symbol().degree(),
                                       p.c.symbol().degree(), std::size_t{1}});
    // Start wide rather than grow: a mid-run regrid re-rounds the whole
    // symbol stream, which perturbs the step differences the stop test
    // watches. 4096 comfortably covers the support that slowly-converging
    // instances develop, and per-step FFT cost at this size is negligible
    // next to the matrix arithmetic.
    std::size_t n = std::max<std::size_t>(4096, next_power_of_two_above(8 * dmax));
    std::vector<double> av, bv, cv;
    const auto fill_coeff_grids = [&] {
        av = sym_eval_grid(p.a.symbol(), n).values;
        bv = sym_eval_grid(p.b.symbol(), n).values;
        cv = sym_eval_grid(p.c.symbol(), n).values;
    };
    fill_coeff_grids();
    std::vector<double> xv(n, 0.0), wv(n);

    SqtMatrix x = sqt_zero(mode, alpha);
    QmeSolution sol;
    bool converged = false;
    constexpr double nc = kNoCompress;  // one recompression per outer iteration
    std::size_t it = 0;
    while (it < p.max_iterations) {
        for (std::size_t j = 0; j < n; ++j) {
            double v;
            switch (p.variant) {
                case QmeVariant::Natural:
                    v = (av[j] * xv[j] + bv[j]) * xv[j] + cv[j];
                    break;
                case QmeVariant::Traditional:
                    v = (av[j] * xv[j] * xv[j] + cv[j]) / (1.0 - bv[j]);
                    break;
                default:
                    v = cv[j] / (1.0 - av[j] * xv[j] - bv[j]);
                    break;
            }
            if (!std::isfinite(v))
                throw DomainFault("qme_solve: non-finite symbol iterate on the grid");
            wv[j] = v;
        }
        const SymmetricSymbol xs = sym_trim(sym_interp_grid(GridValues{n, wv}));
        if (2 * (xs.degree() + 32) > n) {
            // widen the grid and redo this step before aliasing bites
            if (2 * n > cap) throw NoConvergence("qme_solve: symbol outgrew the grid cap");
            n *= 2;
            fill_coeff_grids();
            xv = sym_eval_grid(x.symbol(), n).values;
            wv.assign(n, 0.0);
            continue;
        }
        ++it;

        SqtMatrix xn;
        switch (p.variant) {
            case QmeVariant::Natural:
                // Horner form (A X + B) X + C, matching the grid update above:
                // both pipelines must round the same way or their disagreement
                // shows up as a floor under the step difference.
                xn = sqt_add(sqt_mul(sqt_add(sqt_mul(p.a, x, nc), p.b, nc), x, nc),
                             p.c, nc);
                break;
            case QmeVariant::Traditional:
                xn = sqt_mul(minv,
                             sqt_add(sqt_mul(p.a, sqt_mul(x, x, nc), nc), p.c, nc),
                             nc);
                break;
            case QmeVariant::UBased:
                xn = sqt_mul(
                    sqt_inv(sqt_sub(sqt_sub(id, sqt_mul(p.a, x, nc), nc), p.b, nc),
                            kUInverseEps),
                    p.c, nc);
                break;
        }
        // much tighter than the default: compression perturbs the stored
        // correction, and that perturbation reappears in the next difference
        // K_{k+1} - K_k, delaying the stop test past the genuine decay
        xn.correction = lowrank_compress(xn.correction, 0.05 * kCompressTol);
        xn.element.symbol = xs;
        const SqtMatrix diff = sqt_sub(xn, x, kNoCompress);
        const double eps_k = diff.symbol().max_coeff();
        const double corr_k =
            lowrank_norm_inf(lowrank_compress(diff.correction, kStopCompressTol));
        x = std::move(xn);
        xv.swap(wv);
        if (std::max(eps_k, corr_k) < p.tol) {
            sol.report.iterations = it;
            converged = true;
            break;
        }
    }
    if (!converged) throw NoConvergence("qme_solve: iteration cap reached");

    sol.report.residual = qme_residual(p.a, p.b, p.c, x);
    fill_shape(sol.report, x);
    sol.report.elapsed_seconds = seconds_since(t0);
    sol.g = std::move(x);
    return sol;
}

QmeSymbolSolution qme_symbol_solve(const SymmetricSymbol& a, const SymmetricSymbol& b,
                                   const SymmetricSymbol& c, QmeVariant variant,
                                   double tol, std::size_t max_iterations) {
    const auto t0 = Clock::now();
    const std::size_t cap = max_grid_size();
    const std::size_t dmax = std::max({a.degree(), b.degree(), c.degree()});
    std::size_t n = std::max<std::size_t>(8, next_power_of_two_above(2 * dmax));

    for (; n <= cap; n *= 2) {
        const std::vector<double> av = sym_eval_grid(a, n).values;
        const std::vector<double> bv = sym_eval_grid(b, n).values;
        const std::vector<double> cv = sym_eval_grid(c, n).values;

        std::vector<double> x(n, 0.0), xn(n);
        std::size_t iters = 0;
        bool converged = false;
        while (iters < max_iterations) {
            ++iters;
            double delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double v;
                switch (variant) {
                    case QmeVariant::Natural:
                        v = av[i] * x[i] * x[i] + bv[i] * x[i] + cv[i];
                        break;
                    case QmeVariant::Traditional:
                        v = (av[i] * x[i] * x[i] + cv[i]) / (1.0 - bv[i]);
                        break;
                    default:
                        v = cv[i] / (1.0 - av[i] * x[i] - bv[i]);
                        break;
                }
                if (!std::isfinite(v))
                    throw DomainFault("qme_symbol_solve: non-finite iterate on the grid");
                delta = std::max(delta, std::abs(v - x[i]));
                xn[i] = v;
            }
            x.swap(xn);
            if (delta < tol) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NoConvergence("qme_symbol_solve: iteration cap reached");

        double resid = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            resid = std::max(resid,
                             std::abs(av[i] * x[i] * x[i] + bv[i] * x[i] + cv[i] - x[i]));

        const SymmetricSymbol g = sym_interp_grid(GridValues{n, x});
        const std::size_t len = g.degree() + 1;
        const std::size_t tail = std::max<std::size_t>(1, len / 4);
        double tmax = 0.0;
        for (std::size_t i = len - tail; i < len; ++i)
            tmax = std::max(tmax, std::abs(g[i]));
        if (tmax <= std::max(tol, kTrimTol) * g.max_coeff()) {
            QmeSymbolSolution sol;
            sol.g = sym_trim(g);
            sol.report.iterations = iters;
            sol.report.residual = resid;
            sol.report.symbol_size = sol.g.degree() + 1;
            sol.report.elapsed_seconds = seconds_since(t0);
            return sol;
        }
    }
    throw NoConvergence("qme_symbol_solve: grid cap exceeded");
}

SqrtSolution sqrt_solve(const SqtMatrix& a, double tol, std::size_t max_iterations) {
    const auto t0 = Clock::now();
    const SqtMatrix id = sqt_identity(a.mode, a.alpha());

    // As in qme_solve, the symbols of X and E are evolved pointwise on a
    // shared grid and interpolated back each step; the matrix recurrence
    // carries the corrections. The pointwise update needs no inversion:
    // e <- -e^2 / (2x) value by value.
    const std::size_t cap = max_grid_size();
    std::size_t n = std::max<std::size_t>(
        512, next_power_of_two_above(8 * std::max<std::size_t>(a.symbol().degree(), 1)));
    std::vector<double> avals = sym_eval_grid(a.symbol(), n).values;
    std::vector<double> xvals = avals;
    std::vector<double> evals(n), wx(n), we(n);
    for (std::size_t j = 0; j < n; ++j) evals[j] = 0.5 * (1.0 - avals[j]);

    SqtMatrix x = a;
    SqtMatrix e = sqt_scale(0.5, sqt_sub(id, a));
    std::size_t iters = 0;
    // re-evaluates the value streams on a doubled grid; the E stream comes
    // from an explicit symbol because the matrix may already hold the next
    // iterate when a regrid triggers mid-update
    const auto regrid = [&](const SymmetricSymbol& e_sym) {
        if (2 * n > cap) throw NoConvergence("sqrt_solve: symbol outgrew the grid cap");
        n *= 2;
        avals = sym_eval_grid(a.symbol(), n).values;
        xvals = sym_eval_grid(x.symbol(), n).values;
        evals = sym_eval_grid(e_sym, n).values;
        wx.assign(n, 0.0);
        we.assign(n, 0.0);
    };
    while (true) {
        const double scale = sqt_norm_inf(x);
        const double esize = std::max(e.symbol().max_coeff(), correction_norm_inf(e));
        const bool last = esize <= tol * scale;
        if (!last && iters >= max_iterations)
            throw NoConvergence("sqrt_solve: iteration cap reached");

        // X <- X + E, symbol taken from the grid
        SymmetricSymbol xs;
        while (true) {
            for (std::size_t j = 0; j < n; ++j) wx[j] = xvals[j] + evals[j];
            xs = sym_trim(sym_interp_grid(GridValues{n, wx}));
            if (2 * (xs.degree() + 32) <= n) break;
            regrid(e.symbol());
        }
        // X accumulates one correction per step and the iteration count is
        // in the single digits, so in the algebra the factors stay narrow and
        // a single end-of-run compression suffices (skipping it per step
        // avoids depositing a per-step corner defect in the final residual).
        // In the plain Toeplitz representation every product additionally
        // leaks a corner as wide as the shorter symbol, and carrying those
        // uncompressed makes the late iterations quadratic in memory.
        x = sqt_add(x, e, kNoCompress);
        if (x.mode == Mode::Toeplitz)
            x.correction = lowrank_compress(x.correction, 0.05 * kCompressTol);
        x.element.symbol = xs;
        xvals.swap(wx);

        if (last) {
            // one pointwise Newton polish of the symbol: the stored value
            // then sits a single rounding away from the true square root,
            // instead of carrying the noise accumulated over the iteration
            for (std::size_t j = 0; j < n; ++j)
                xvals[j] = 0.5 * (xvals[j] + avals[j] / xvals[j]);
            x.element.symbol = sym_trim(sym_interp_grid(GridValues{n, xvals}));
            break;
        }

        // E <- -E X^{-1} E / 2, symbol taken from the grid
        const SymmetricSymbol e_prev_sym = e.symbol();
        const SqtMatrix xinv = sqt_inv(x, estimate_inversion_eps(x.symbol()));
        // compress the inner product tightly instead of carrying it raw: in
        // the plain Toeplitz representation each product leaks a corner as
        // wide as the shorter symbol, and letting two of them concatenate
        // balloons the factor width (and peak memory) quadratically
        const SqtMatrix exi = sqt_mul(e, xinv, 0.01 * kCompressTol);
        e = sqt_scale(-0.5, sqt_mul(exi, e, kNoCompress));
        // E is quadratically small, so a storage-level threshold relative to
        // the factors of E itself discards corner mass that still matters for
        // X; compress well below the default so the kept correction is exact
        // to the precision of the final sum.
        e.correction = lowrank_compress(e.correction, 0.01 * kCompressTol);
        while (true) {
            for (std::size_t j = 0; j < n; ++j)
                we[j] = -0.5 * evals[j] * evals[j] / xvals[j];
            // floor at absolute working precision, not relative to E's own
            // shrinking maximum: once E is small its relative tail is
            // sub-roundoff debris on the scale of X, yet its support drives
            // the grid size and the width of the leaked product corners
            const SymmetricSymbol es =
                sym_floor(sym_interp_grid(GridValues{n, we}), kTrimTol);
            if (2 * (es.degree() + 32) <= n) {
                e.element.symbol = es;
                break;
            }
            regrid(e_prev_sym);
        }
        evals.swap(we);
        ++iters;
    }

    x.correction = lowrank_compress(x.correction, 0.05 * kCompressTol);

    // two corner-Newton sweeps: the first removes the accumulated rounding
    // defect of the incremental sum, the second the much smaller remainder
    // left by the first window
    for (int sweep = 0; sweep < 2; ++sweep)
        if (!sqrt_corner_refine(x, a)) break;

    SqrtSolution sol;
    sol.report.iterations = iters;
    // the residual is measured with the standard product compression: its
    // singular-value threshold separates the structured defect of X from the
    // incoherent rounding noise of the evaluation pipeline itself (a raw
    // product corner carries hundreds of sub-threshold rounding entries per
    // row, and their absolute row sums sit orders above the actual defect)
    SqtMatrix r = sqt_sub(sqt_mul(x, x), a);
    r.element.symbol =
        sym_floor(r.symbol(), kTrimTol * std::max(1.0, sqt_norm_inf(x)));
    sol.report.residual = sqt_norm_inf(r);
    fill_shape(sol.report, x);
    sol.report.elapsed_seconds = seconds_since(t0);
    sol.x = std::move(x);
    return sol;
}

}  // namespace sqt
