// AVX2 kernel variants. This translation unit is compiled with -mavx2 -mfma;
// nothing here runs unless the cpu reports avx2 support at startup.

#include "sqt/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#define SQT_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define SQT_HAVE_AVX2_TU 0
#endif

namespace sqt::kernels {

#if SQT_HAVE_AVX2_TU

namespace {

void axpy_avx2(double s, const double* x, double* y, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, vx, vy));
    }
    for (; i < n; ++i) y[i] += s * x[i];
}

// interleaved complex product, two complex numbers per 256-bit lane
void cmul_avx2(const double* x, const double* y, double* z, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(x + 2 * i);  // xr0 xi0 xr1 xi1
        __m256d vy = _mm256_loadu_pd(y + 2 * i);
        __m256d yr = _mm256_movedup_pd(vy);                     // yr0 yr0 yr1 yr1
        __m256d yi = _mm256_permute_pd(vy, 0xF);                // yi0 yi0 yi1 yi1
        __m256d xs = _mm256_permute_pd(vx, 0x5);                // xi0 xr0 xi1 xr1
        __m256d t  = _mm256_mul_pd(xs, yi);                     // xi*yi  xr*yi ...
        _mm256_storeu_pd(z + 2 * i, _mm256_fmaddsub_pd(vx, yr, t));
    }
    for (; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        const double yr = y[2 * i], yi = y[2 * i + 1];
        z[2 * i]     = xr * yr - xi * yi;
        z[2 * i + 1] = xr * yi + xi * yr;
    }
}

// sign-bit mask built inside each function so no AVX code runs at load time
inline __m256d abs_mask() {
    return _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
}

double abs_sum_avx2(const double* x, std::size_t n) {
    const __m256d kAbsMask = abs_mask();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    // fixed lane order keeps the reduction deterministic
    double s = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) s += std::fabs(x[i]);
    return s;
}

double abs_max_avx2(const double* x, std::size_t n) {
    const __m256d kAbsMask = abs_mask();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

const Dispatch kAvx2 = {axpy_avx2, cmul_avx2, abs_sum_avx2, abs_max_avx2,
                        dot_avx2, "avx2"};

}  // namespace

bool avx2_available() { return __builtin_cpu_supports("avx2") != 0; }

const Dispatch* avx2() { return avx2_available() ? &kAvx2 : nullptr; }

#else

bool avx2_available() { return false; }
const Dispatch* avx2() { return nullptr; }

#endif

}  // namespace sqt::kernels
