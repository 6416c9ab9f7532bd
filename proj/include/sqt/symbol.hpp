#pragma once

// Symmetric Laurent symbols a(z) = a_0 + sum_{i>=1} a_i (z^i + z^-i) with
// finitely many coefficients. Only the half a_0..a_d is stored; full Laurent
// vectors are materialized inside FFT scratch only. All matrix arithmetic in
// the algebra reduces to the function arithmetic implemented here.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqt/fft.hpp"

namespace sqt {

// Default relative threshold for dropping trailing symbol coefficients.
inline constexpr double kTrimTol = 1e-15;

// Cap on the adaptive FFT grid (overridable via SQT_MAX_GRID).
std::size_t max_grid_size();

class SymmetricSymbol {
public:
    SymmetricSymbol() : coeffs_{0.0} {}
    explicit SymmetricSymbol(std::vector<double> coeffs);
    static SymmetricSymbol constant(double c) { return SymmetricSymbol({c}); }

    std::size_t degree() const { return coeffs_.size() - 1; }
    double operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    // |a_0| + 2 sum_{i>=1} |a_i|
    double wiener_norm() const;
    // max_i |a_i|
    double max_coeff() const;
    // value at z = exp(i*theta)
    double eval(double theta) const;

    bool operator==(const SymmetricSymbol&) const = default;

private:
    std::vector<double> coeffs_;  // a_0..a_d, never empty
};

struct GridValues {
    std::size_t size = 0;                 // N, power of two
    std::vector<double> values;           // values[k] = a(w_N^k), k = 0..N-1
};

SymmetricSymbol sym_add(const SymmetricSymbol& a, const SymmetricSymbol& b);
SymmetricSymbol sym_sub(const SymmetricSymbol& a, const SymmetricSymbol& b);
SymmetricSymbol sym_scale(double s, const SymmetricSymbol& a);
SymmetricSymbol sym_mul(const SymmetricSymbol& a, const SymmetricSymbol& b);
SymmetricSymbol sym_trim(const SymmetricSymbol& a, double tol = kTrimTol);

struct InversionResult {
    SymmetricSymbol symbol;  // c_0..c_{N/2}, untrimmed
    double cond = 0.0;       // max|a| / min|a| over the final grid
    std::size_t grid = 0;    // final N
};

// Adaptive grid-doubling inversion of a(z); throws IllConditioned when the
// grid condition estimate exceeds 1/eps and ZeroOnCircle on an exact zero.
InversionResult sym_inv(const SymmetricSymbol& a, double eps);

GridValues sym_eval_grid(const SymmetricSymbol& a, std::size_t n);
SymmetricSymbol sym_interp_grid(const GridValues& values);

// Approximates f(a(z)) by adaptive evaluation/interpolation; doubles the grid
// until the top quarter of the coefficients decays below tol relative.
SymmetricSymbol sym_map_grid(const SymmetricSymbol& a,
                             const std::function<double(double)>& f, double tol);

// Text format: "S <a_0> ... <a_d>" with 17 significant digits.
std::string to_line(const SymmetricSymbol& a);
SymmetricSymbol symbol_from_line(const std::string& line);

std::ostream& operator<<(std::ostream& os, const SymmetricSymbol& a);

}  // namespace sqt
