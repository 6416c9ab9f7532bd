#pragma once

// Power-of-two complex FFT, iterative radix-2. All grid sizes in this
// project are powers of two, so no general-length machinery is needed.
// Twiddle tables are built per call; no shared mutable state.

#include <complex>
#include <vector>

namespace sqt {

using cvector = std::vector<std::complex<double>>;

// In-place DFT: x[k] <- sum_j x[j] * exp(sign * 2*pi*i*j*k/N).
// sign = -1 is the forward transform, sign = +1 the unscaled inverse.
// N = x.size() must be a power of two.
void fft(cvector& x, int sign);

// Unscaled inverse followed by division by N.
void ifft(cvector& x);

bool is_power_of_two(std::size_t n);

// Smallest power of two strictly greater than n.
std::size_t next_power_of_two_above(std::size_t n);

}  // namespace sqt
