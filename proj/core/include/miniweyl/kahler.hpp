#pragma once

#include <cstddef>
#include <functional>

#include "miniweyl/diffeo.hpp"
#include "miniweyl/quadrature.hpp"

namespace miniweyl {

/// Density of the round area form in either affine chart, 4/(1+|w|^2)^2.
double roundAreaDensity(cplx w);
double roundAreaDensity(const SpherePoint& p, int chart);

/// Kahler data of the product metric adapted to graph(psi): the first
/// factor carries omega_1 = -psi^* omega_2, a positive form whose density
/// against the round form is `conformalFactor`, with total mass 4 pi.
struct KahlerData {
    std::function<double(const SpherePoint&)> conformalFactor;
    std::size_t quadNMu = 128;
    std::size_t quadNPhi = 256;

    /// Quadrature of conformalFactor against the round area form.
    double totalMass() const;
};

/// Builds the Kahler data of graph(psi).  conformalFactor evaluation
/// throws NonPositiveDensity where the pulled-back density fails to be
/// positive (psi not orientation-reversing at that sample).
KahlerData pullbackAreaData(const SphereDiffeo& psi, std::size_t nMu = 128,
                            std::size_t nPhi = 256);

/// Value of omega_1 (+) psi^* omega_2 on the chart basis 2-plane tangent to
/// graph(psi) at (p, psi(p)); vanishes identically for the Lagrangian
/// construction, so the returned magnitude is a plumbing consistency check.
double lagrangianResidual(const SphereDiffeo& psi, const SpherePoint& p);

namespace detail {

/// Same contraction for an arbitrary graph: omega_1-density is supplied by
/// `density` (against the round form at p), the map and its chart Jacobian
/// by `eval` / `jac`.  Used by tests to probe orientation-preserving
/// doubles, where the residual must stay away from zero.
double graphSymplecticResidual(const std::function<SpherePoint(const SpherePoint&)>& eval,
                               const std::function<ChartJacobian(const SpherePoint&)>& jac,
                               const std::function<double(const SpherePoint&)>& density,
                               const SpherePoint& p);

}  // namespace detail

}  // namespace miniweyl
