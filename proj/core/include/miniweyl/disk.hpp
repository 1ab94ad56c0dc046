#pragma once

#include <vector>

#include "miniweyl/diffeo.hpp"
#include "miniweyl/sphere.hpp"

namespace miniweyl {

/// Holomorphic disk into CP1 x CP1 with boundary on graph(psi), stored as
/// truncated Taylor coefficients of both factor maps in fixed working
/// affine charts.
struct HolomorphicDisk {
    int N = 0;
    std::vector<cplx> coeffsF1, coeffsF2;  // length N + 1
    int chartF1 = 0, chartF2 = 0;
    double residualNorm = 0.0;

    cplx evalF1(cplx zeta) const;
    cplx evalF2(cplx zeta) const;
    cplx derivF1(cplx zeta) const;
    cplx derivF2(cplx zeta) const;
    SpherePoint pointF1(cplx zeta) const { return SpherePoint::fromAffine(evalF1(zeta), chartF1); }
    SpherePoint pointF2(cplx zeta) const { return SpherePoint::fromAffine(evalF2(zeta), chartF2); }

    /// |a_N| / max_k |a_k| of the first factor (resolution check).
    double spectralTail() const;
    /// min |F1'| over a boundary grid (embeddedness proxy).
    double minBoundaryDeriv(std::size_t samples = 256) const;
};

/// Chordal sup distance between two disks' maps over a boundary grid
/// (chart- and truncation-independent).
double diskBoundaryDistance(const HolomorphicDisk& a, const HolomorphicDisk& b,
                            std::size_t samples = 256);

struct BoundaryResidual {
    double norm = 0.0;            // sqrt(negativeEnergy^2 + F2 mismatch^2)
    double negativeEnergy = 0.0;  // L2 norm of the negative-frequency content
    std::vector<cplx> spectrum;   // full DFT of psi(F1) on the boundary grid
    std::vector<cplx> readOffF2;  // non-negative part, modes 0..N
};

/// Evaluates G = psi(F1) on a 4N boundary grid and splits its spectrum:
/// the negative-frequency energy measures failure of holomorphic
/// extension, the non-negative part is the induced second factor.  Throws
/// ChartPole when boundary values leave the working charts' reach.
BoundaryResidual boundaryResidual(const SphereDiffeo& psi, const HolomorphicDisk& disk);

/// Round-form area of the second-factor image, as a Stokes boundary
/// integral; lands in (0, 4 pi) for disks avoiding the chart pole.
double omegaArea(const HolomorphicDisk& disk);
/// Same boundary integral given boundary values of any factor map.
double omegaAreaFromBoundary(const std::vector<cplx>& values);

/// omega_1-area of the first-factor image, integrating the pulled-back
/// density over the parameter disk (radial Gauss-Legendre x uniform
/// angular grid).
double omegaAreaFirstFactor(const SphereDiffeo& psi, const HolomorphicDisk& disk,
                            std::size_t nRadial = 48, std::size_t nAngular = 128);

/// Degree of the doubled map, (omega_1-area + omega_2-area) / 4 pi,
/// rounded; NonIntegral if farther than 0.01 from an integer.
int doubleDegree(const SphereDiffeo& psi, const HolomorphicDisk& disk);

/// Taylor truncation of the closed-form de Sitter disk.  Requires both
/// factor poles to lie outside the closed unit disk.
HolomorphicDisk deSitterDiskTruncated(const struct DiskParam& A, int N);

}  // namespace miniweyl
