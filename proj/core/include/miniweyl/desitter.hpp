#pragma once

#include <cstddef>
#include <memory>
#include <utility>

#include <Eigen/Core>

#include "miniweyl/sphere.hpp"
#include "miniweyl/weyl.hpp"

namespace miniweyl {

/// SL(2,C) matrix (a b; c d), det = 1, parameterizing one disk of the de
/// Sitter family.
struct DiskParam {
    cplx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

    static DiskParam identity() { return {}; }
    /// Normalizes the determinant to 1.
    static DiskParam fromMatrix(cplx a, cplx b, cplx c, cplx d);

    DiskParam operator*(const DiskParam& rhs) const;
    double frobeniusNorm() const;
};

/// Unit-disk automorphism matrix (alpha beta; conj(beta) conj(alpha)),
/// normalized to |alpha|^2 - |beta|^2 = 1.  Requires |alpha| > |beta|.
DiskParam diskAutomorphism(cplx alpha, cplx beta);
/// Matrix of zeta -> e^{i phi} (zeta - zeta0) / (1 - conj(zeta0) zeta).
DiskParam diskAutomorphismFor(cplx zeta0, double phi);

/// The disk map zeta -> ([a zeta + b : c zeta + d], [-conj(d) zeta -
/// conj(c) : conj(b) zeta + conj(a)]); for |zeta| = 1 the second component
/// is the antipode of the first, so the boundary lies on the graph of the
/// antipodal map.
std::pair<SpherePoint, SpherePoint> desitterDisk(const DiskParam& A, cplx zeta);

struct BoundaryGraphReport {
    double residual = 0.0;         // max chordal mismatch over the boundary grid
    double conditionNumber = 1.0;  // ~ ||A||^2, reported for large parameters
};

/// Max over a boundary grid of the chordal distance between the second
/// component and the antipode of the first.
BoundaryGraphReport boundaryOnGraphResidual(const DiskParam& A, std::size_t samples = 256);

/// Coset of A modulo right multiplication by disk-automorphism matrices.
/// `invariant` is Q = A sigma(A)^{-1} with sigma(X) = K conj(X) K,
/// K = (0 1; 1 0); it determines the coset exactly.  `representative` is a
/// deterministic section value with representative * gaugeTag = A.
struct DeSitterModuliPoint {
    DiskParam representative;
    DiskParam gaugeTag;             // in SU(1,1)
    Eigen::Matrix2cd invariant;
};

DeSitterModuliPoint gaugeReduce(const DiskParam& A);

/// The compactified de Sitter chart structure (the model Einstein-Weyl
/// space whose scattering map is the antipodal map).
std::shared_ptr<const WeylChartStructure> compactifiedDeSitter(double delta = 1e-3);

}  // namespace miniweyl
