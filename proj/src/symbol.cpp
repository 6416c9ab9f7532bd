#include "sqt/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>

#include "sqt/errors.hpp"
#include "sqt/kernels.hpp"

namespace sqt {

namespace {

constexpr std::size_t kDefaultMaxGrid = std::size_t{1} << 22;

// Full Laurent coefficient layout on a grid of size n: index i carries z^i,
// index n-i carries z^-i. Requires n > d so the halves do not alias a_0.
cvector laurent_scratch(const SymmetricSymbol& a, std::size_t n) {
    cvector c(n, {0.0, 0.0});
    c[0] = a[0];
    for (std::size_t i = 1; i <= a.degree(); ++i) {
        c[i] += a[i];
        c[n - i] += a[i];
    }
    return c;
}

// values[k] = a(w_n^k) as complex numbers
cvector eval_complex(const SymmetricSymbol& a, std::size_t n) {
    cvector c = laurent_scratch(a, n);
    fft(c, +1);
    return c;
}

// Interpolate grid values to a full Laurent vector t_j, j = -n/2+1..n/2,
// then fold to the symmetric half by averaging (t_i + t_{-i})/2.
// max_scale calibrates the asymmetry assertion.
SymmetricSymbol interp_fold(cvector grid, double max_scale) {
    const std::size_t n = grid.size();
    fft(grid, -1);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : grid) v *= inv;

    const double tol = 1e-13 * max_scale;
    std::vector<double> c(n / 2 + 1);
    c[0] = grid[0].real();
    double asym = std::abs(grid[0].imag());
    for (std::size_t i = 1; i < n / 2; ++i) {
        asym = std::max(asym, std::abs(grid[i] - grid[n - i]));
        c[i] = 0.5 * (grid[i].real() + grid[n - i].real());
    }
    c[n / 2] = grid[n / 2].real();
    asym = std::max(asym, std::abs(grid[n / 2].imag()));
    if (asym > tol)
        throw AsymmetryDetected("grid values do not come from a symmetric function (residual " +
                                std::to_string(asym) + ")");
    return SymmetricSymbol(std::move(c));
}

}  // namespace

std::size_t max_grid_size() {
    if (const char* env = std::getenv("SQT_MAX_GRID")) {
        const unsigned long long v = std::strtoull(env, nullptr, 10);
        if (v >= 8) return static_cast<std::size_t>(v);
    }
    return kDefaultMaxGrid;
}

SymmetricSymbol::SymmetricSymbol(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double SymmetricSymbol::wiener_norm() const {
    return std::abs(coeffs_[0]) +
           2.0 * kernels::abs_sum(coeffs_.data() + 1, coeffs_.size() - 1);
}

double SymmetricSymbol::max_coeff() const {
    return kernels::abs_max(coeffs_.data(), coeffs_.size());
}

double SymmetricSymbol::eval(double theta) const {
    double v = coeffs_[0];
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        v += 2.0 * coeffs_[i] * std::cos(theta * static_cast<double>(i));
    return v;
}

SymmetricSymbol sym_add(const SymmetricSymbol& a, const SymmetricSymbol& b) {
    const SymmetricSymbol& lo = a.degree() <= b.degree() ? a : b;
    const SymmetricSymbol& hi = a.degree() <= b.degree() ? b : a;
    std::vector<double> c = hi.coeffs();
    kernels::axpy(1.0, lo.coeffs().data(), c.data(), lo.coeffs().size());
    return sym_trim(SymmetricSymbol(std::move(c)));
}

SymmetricSymbol sym_sub(const SymmetricSymbol& a, const SymmetricSymbol& b) {
    return sym_add(a, sym_scale(-1.0, b));
}

SymmetricSymbol sym_scale(double s, const SymmetricSymbol& a) {
    std::vector<double> c = a.coeffs();
    for (auto& v : c) v *= s;
    return SymmetricSymbol(std::move(c));
}

SymmetricSymbol sym_mul(const SymmetricSymbol& a, const SymmetricSymbol& b) {
    if (a.degree() == 0) return sym_trim(sym_scale(a[0], b));
    if (b.degree() == 0) return sym_trim(sym_scale(b[0], a));

    const std::size_t n = next_power_of_two_above(2 * (a.degree() + b.degree()));
    cvector va = eval_complex(a, n);
    const cvector vb = eval_complex(b, n);
    kernels::cmul(va.data(), vb.data(), va.data(), n);
    const double scale = a.wiener_norm() * b.wiener_norm();
    return sym_trim(interp_fold(std::move(va), std::max(scale, 1e-300)));
}

SymmetricSymbol sym_trim(const SymmetricSymbol& a, double tol) {
    const double thresh = tol * a.max_coeff();
    std::size_t d = a.degree();
    while (d > 0 && std::abs(a[d]) <= thresh) --d;
    std::vector<double> c(a.coeffs().begin(), a.coeffs().begin() + d + 1);
    return SymmetricSymbol(std::move(c));
}

InversionResult sym_inv(const SymmetricSymbol& a, double eps) {
    if (eps <= 0.0) throw BadInput("sym_inv: eps must be positive");
    const std::size_t cap = max_grid_size();
    std::size_t n = next_power_of_two_above(a.degree());
    while (true) {
        n *= 2;
        if (n > cap) throw NoConvergence("sym_inv: grid cap exceeded");

        const cvector y = eval_complex(a, n);
        double ymax = 0.0, ymin = std::numeric_limits<double>::infinity();
        for (const auto& v : y) {
            const double m = std::abs(v);
            ymax = std::max(ymax, m);
            ymin = std::min(ymin, m);
        }
        if (ymin == 0.0) throw ZeroOnCircle();
        const double cond = ymax / ymin;
        if (cond > 1.0 / eps) throw IllConditioned(cond);

        cvector recip(n);
        for (std::size_t i = 0; i < n; ++i) recip[i] = 1.0 / y[i];
        SymmetricSymbol t = interp_fold(std::move(recip), 1.0 / ymin);

        SymmetricSymbol r = sym_mul(a, t);
        std::vector<double> rc = r.coeffs();
        rc[0] -= 1.0;
        const double delta = kernels::abs_max(rc.data(), rc.size());
        if (delta <= eps) return {std::move(t), cond, n};
    }
}

GridValues sym_eval_grid(const SymmetricSymbol& a, std::size_t n) {
    if (!is_power_of_two(n) || n <= a.degree())
        throw BadGridSize("sym_eval_grid: N must be a power of two greater than the degree");
    const cvector v = eval_complex(a, n);
    const double tol = 1e-13 * std::max(a.wiener_norm(), 1e-300);
    GridValues g{n, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(v[i].imag()) > tol)
            throw Error("sym_eval_grid: non-real value for real symmetric symbol");
        g.values[i] = v[i].real();
    }
    return g;
}

SymmetricSymbol sym_interp_grid(const GridValues& values) {
    if (!is_power_of_two(values.size) || values.values.size() != values.size)
        throw BadGridSize("sym_interp_grid: inconsistent grid");
    cvector g(values.size);
    for (std::size_t i = 0; i < values.size; ++i) g[i] = values.values[i];
    const double scale =
        std::max(kernels::abs_max(values.values.data(), values.size), 1e-300);
    return interp_fold(std::move(g), scale);
}

SymmetricSymbol sym_map_grid(const SymmetricSymbol& a,
                             const std::function<double(double)>& f, double tol) {
    const std::size_t cap = max_grid_size();
    std::size_t n = std::max<std::size_t>(8, next_power_of_two_above(2 * a.degree()));
    while (n <= cap) {
        const GridValues g = sym_eval_grid(a, n);
        cvector fv(n);
        double fmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = f(g.values[i]);
            if (!std::isfinite(v)) throw DomainFault("sym_map_grid: non-finite value of f");
            fv[i] = v;
            fmax = std::max(fmax, std::abs(v));
        }
        const SymmetricSymbol c = interp_fold(std::move(fv), std::max(fmax, 1e-300));

        // accept once the top quarter of the coefficients has decayed
        const std::size_t len = c.degree() + 1;
        const std::size_t tail = std::max<std::size_t>(1, len / 4);
        const double cmax = c.max_coeff();
        const double tmax =
            kernels::abs_max(c.coeffs().data() + (len - tail), tail);
        if (tmax <= tol * cmax) return sym_trim(c);
        n *= 2;
    }
    throw NoConvergence("sym_map_grid: grid cap exceeded");
}

std::string to_line(const SymmetricSymbol& a) {
    std::ostringstream os;
    os.precision(17);
    os << "S";
    for (double v : a.coeffs()) os << " " << v;
    return os.str();
}

SymmetricSymbol symbol_from_line(const std::string& line) {
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag != "S") throw BadInput("symbol line must start with 'S'");
    std::vector<double> c;
    double v;
    while (is >> v) c.push_back(v);
    if (c.empty()) throw BadInput("symbol line has no coefficients");
    return SymmetricSymbol(std::move(c));
}

std::ostream& operator<<(std::ostream& os, const SymmetricSymbol& a) {
    return os << to_line(a);
}

}  // namespace sqt
