#include "sqt/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace sqt::kernels {

namespace {

void axpy_scalar(double s, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

void cmul_scalar(const double* x, const double* y, double* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        const double yr = y[2 * i], yi = y[2 * i + 1];
        z[2 * i]     = xr * yr - xi * yi;
        z[2 * i + 1] = xr * yi + xi * yr;
    }
}

double abs_sum_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double abs_max_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

const Dispatch kScalar = {axpy_scalar, cmul_scalar, abs_sum_scalar,
                          abs_max_scalar, dot_scalar, "scalar"};

const Dispatch* select() {
    const char* env = std::getenv("SQT_KERNEL");
    if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
    if (const Dispatch* v = avx2()) {
        if (!env || std::strcmp(env, "avx2") == 0) return v;
    }
    return &kScalar;
}

}  // namespace

const Dispatch& scalar() { return kScalar; }

const Dispatch& active() {
    static const Dispatch* chosen = select();
    return *chosen;
}

}  // namespace sqt::kernels
