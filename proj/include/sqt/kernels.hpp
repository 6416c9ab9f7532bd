#pragma once

// Data-parallel inner-loop kernels. Scalar reference implementations plus
// AVX2 variants, selected once at startup from cpuid (override with
// SQT_KERNEL=scalar|avx2). All variants must agree bitwise-close; the
// equivalence tests pin scalar vs vector results to tight tolerances.

#include <complex>
#include <cstddef>
#include <string>

namespace sqt::kernels {

struct Dispatch {
    // y[i] += s * x[i]
    void (*axpy)(double s, const double* x, double* y, std::size_t n);
    // pointwise complex product: z[i] = x[i] * y[i] (interleaved re,im)
    void (*cmul)(const double* x, const double* y, double* z, std::size_t n);
    // sum of |x[i]|
    double (*abs_sum)(const double* x, std::size_t n);
    // max of |x[i]|
    double (*abs_max)(const double* x, std::size_t n);
    // dot product
    double (*dot)(const double* x, const double* y, std::size_t n);
    const char* name;
};

const Dispatch& scalar();    // reference kernels
const Dispatch& active();    // runtime-selected (avx2 when available)
bool avx2_available();
const Dispatch* avx2();      // nullptr when not compiled in / not supported

inline void axpy(double s, const double* x, double* y, std::size_t n) {
    active().axpy(s, x, y, n);
}
inline void cmul(const std::complex<double>* x, const std::complex<double>* y,
                 std::complex<double>* z, std::size_t n) {
    active().cmul(reinterpret_cast<const double*>(x), reinterpret_cast<const double*>(y),
                  reinterpret_cast<double*>(z), n);
}
inline double abs_sum(const double* x, std::size_t n) { return active().abs_sum(x, n); }
inline double abs_max(const double* x, std::size_t n) { return active().abs_max(x, n); }
inline double dot(const double* x, const double* y, std::size_t n) {
    return active().dot(x, y, n);
}

}  // namespace sqt::kernels
