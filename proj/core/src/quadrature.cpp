#include "miniweyl/quadrature.hpp"

#include <cmath>

namespace miniweyl {

GaussLegendreRule gaussLegendre(std::size_t n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

SphereQuadrature::SphereQuadrature(std::size_t nMu, std::size_t nPhi) {
    const GaussLegendreRule mu = gaussLegendre(nMu);
    const GaussLegendreRule ph = gaussLegendre(nPhi);
    points.reserve(nMu * nPhi);
    weights.reserve(nMu * nPhi);
    for (std::size_t i = 0; i < nMu; ++i) {
        const double c = mu.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (std::size_t j = 0; j < nPhi; ++j) {
            const double phi = M_PI * (ph.nodes[j] + 1.0);  // [0, 2pi]
            points.push_back(SpherePoint::fromUnitVec(
                Vec3(s * std::cos(phi), s * std::sin(phi), c)));
            weights.push_back(mu.weights[i] * ph.weights[j] * M_PI);
        }
    }
}

}  // namespace miniweyl
