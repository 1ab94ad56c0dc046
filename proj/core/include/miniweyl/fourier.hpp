#pragma once

#include <complex>
#include <vector>

namespace miniweyl {

/// Forward DFT: c[m] = (1/M) sum_j f[j] exp(-2 pi i m j / M).  Bin m holds
/// the coefficient of exp(i m theta) for m = 0..M/2 and the coefficient of
/// exp(-i (M-m) theta) for m > M/2.
std::vector<std::complex<double>> forwardDft(const std::vector<std::complex<double>>& samples);

/// Inverse of forwardDft (values on the uniform theta grid).
std::vector<std::complex<double>> inverseDft(const std::vector<std::complex<double>>& modes);

/// Values of the polynomial sum_k coeff[k] z^k at the M-th roots of unity.
std::vector<std::complex<double>> evalOnCircle(const std::vector<std::complex<double>>& coeffs,
                                               std::size_t gridSize);

/// Derivative values sum_k k coeff[k] z^(k-1) on the same grid.
std::vector<std::complex<double>> evalDerivOnCircle(const std::vector<std::complex<double>>& coeffs,
                                                    std::size_t gridSize);

}  // namespace miniweyl
