#include "miniweyl/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include "miniweyl/errors.hpp"

namespace miniweyl {

std::vector<std::complex<double>> forwardDft(const std::vector<std::complex<double>>& samples) {
    if (samples.empty()) fail(ErrorCode::ConfigInvalid, "empty DFT input");
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> out;
    fft.fwd(out, samples);
    const double scale = 1.0 / static_cast<double>(samples.size());
    for (auto& c : out) c *= scale;
    return out;
}

std::vector<std::complex<double>> inverseDft(const std::vector<std::complex<double>>& modes) {
    if (modes.empty()) fail(ErrorCode::ConfigInvalid, "empty DFT input");
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> scaled = modes;
    const double scale = static_cast<double>(modes.size());
    for (auto& c : scaled) c *= scale;
    std::vector<std::complex<double>> out;
    fft.inv(out, scaled);
    return out;
}

std::vector<std::complex<double>> evalOnCircle(const std::vector<std::complex<double>>& coeffs,
                                               std::size_t gridSize) {
    std::vector<std::complex<double>> modes(gridSize, std::complex<double>(0.0, 0.0));
    if (coeffs.size() > gridSize) {
        fail(ErrorCode::ConfigInvalid, "polynomial degree exceeds evaluation grid");
    }
    for (std::size_t k = 0; k < coeffs.size(); ++k) modes[k] = coeffs[k];
    return inverseDft(modes);
}

std::vector<std::complex<double>> evalDerivOnCircle(const std::vector<std::complex<double>>& coeffs,
                                                    std::size_t gridSize) {
    std::vector<std::complex<double>> deriv(coeffs.size() > 1 ? coeffs.size() - 1 : 1,
                                            std::complex<double>(0.0, 0.0));
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        deriv[k - 1] = static_cast<double>(k) * coeffs[k];
    }
    return evalOnCircle(deriv, gridSize);
}

}  // namespace miniweyl
