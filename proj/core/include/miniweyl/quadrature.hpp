#pragma once

#include <cstddef>
#include <vector>

#include "miniweyl/sphere.hpp"

namespace miniweyl {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // sum = 2
};

/// Nodes and weights of the n-point Gauss-Legendre rule, by Newton
/// iteration on the Legendre polynomial.
GaussLegendreRule gaussLegendre(std::size_t n);

/// Product Gauss-Legendre grid on the round sphere in (cos theta, phi)
/// coordinates; weights integrate against the round area form (total 4 pi).
struct SphereQuadrature {
    explicit SphereQuadrature(std::size_t nMu = 128, std::size_t nPhi = 256);

    std::size_t size() const { return points.size(); }
    std::vector<SpherePoint> points;
    std::vector<double> weights;
};

}  // namespace miniweyl
