#include "sqt/fft.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace sqt {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two_above(std::size_t n) {
    std::size_t p = 1;
    while (p <= n) p <<= 1;
    return p;
}

void fft(cvector& x, int sign) {
    const std::size_t n = x.size();
    assert(is_power_of_two(n));
    if (n == 1) return;

    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    // twiddles for the largest stage, w[k] = exp(sign*2*pi*i*k/n)
    cvector w(n / 2);
    const double step = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        w[k] = {std::cos(step * static_cast<double>(k)),
                std::sin(step * static_cast<double>(k))};

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = x[i + k];
                const std::complex<double> v = x[i + k + len / 2] * w[k * stride];
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
            }
        }
    }
}

void ifft(cvector& x) {
    fft(x, +1);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto& v : x) v *= inv;
}

}  // namespace sqt
