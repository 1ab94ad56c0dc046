#pragma once

#include <cstddef>
#include <vector>

#include "miniweyl/weyl.hpp"

namespace miniweyl {

struct GeodesicOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    std::size_t maxSteps = 400000;
    double chartSwitchRadius = 1.1;
    /// Also integrate the Weyl affine parameter and its log-speed (stiff
    /// near the collar; off on hot paths).
    bool traceWeylAffine = false;
};

struct PathSample {
    double s = 0.0;  // gHat Levi-Civita affine parameter from the collar entry
    ChartPoint x;
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    double u = 0.0;
    double weylAffine = 0.0;  // populated when traceWeylAffine is set
};

struct GeodesicPath {
    std::vector<PathSample> samples;
    SpherePoint pastPoint;    // emission point on the past boundary
    SpherePoint futurePoint;  // endpoint extrapolated to u = 0
    double extrapolationError = 0.0;
    double maxNullDrift = 0.0;
    bool towardFuture = true;
    /// Final spatial direction (complex, in the chart of the last sample).
    cplx finalDirection{0.0, 0.0};
    int finalChart = 0;
};

/// Integrates the null geodesic emitted at boundary point p into the
/// domain: a second-order Taylor entry from u = 0 to the collar, adaptive
/// Runge-Kutta across the chart (Levi-Civita affine parameterization of
/// gHat, null-cone reprojection each accepted step), and a quadratic
/// Richardson extrapolation of the far endpoint to u = 0.
/// `directionAngle` selects the initial spatial direction on the S^1 of
/// null directions; `fromPast` = false integrates from the future boundary
/// toward the past.  Errors: StepBudgetExceeded, TrappedGeodesic.
GeodesicPath integrateNullGeodesic(const WeylChartStructure& W, const SpherePoint& p,
                                   double directionAngle, bool fromPast = true,
                                   const GeodesicOptions& opt = {});

/// Same, with the initial spatial chart direction given explicitly (unit
/// modulus, in the active chart of p).
GeodesicPath integrateNullGeodesicDir(const WeylChartStructure& W, const SpherePoint& p,
                                      cplx chartDirection, bool fromPast = true,
                                      const GeodesicOptions& opt = {});

struct RefocusResult {
    SpherePoint meanQ;
    double dispersion = 0.0;  // max pairwise chordal distance of endpoints
};

/// Integrates nDirections null geodesics from p, uniformly spread over the
/// circle of future null directions.
RefocusResult refocusCheck(const WeylChartStructure& W, const SpherePoint& p,
                           std::size_t nDirections, const GeodesicOptions& opt = {});

struct ScatteringSample {
    SpherePoint p, q;
    double dispersion = 0.0;
    double jacobianDet = 0.0;
    bool ok = false;
};

struct ScatteringGridSpec {
    std::size_t nTheta = 8;
    std::size_t nPhi = 8;
    std::size_t nDirections = 16;
    bool withJacobian = false;
    double dispersionTol = 1e-4;
};

std::vector<ScatteringSample> scatteringMap(const WeylChartStructure& W,
                                            const ScatteringGridSpec& grid,
                                            const GeodesicOptions& opt = {});

struct ScatteringJacobian {
    Eigen::Matrix2d matrix = Eigen::Matrix2d::Zero();  // boundary charts at p and q
    int chartIn = 0, chartOut = 0;
    double det() const { return matrix.determinant(); }
};

/// Finite-difference derivative of the boundary-to-boundary map p -> q.
ScatteringJacobian scatteringJacobian(const WeylChartStructure& W, const SpherePoint& p,
                                      double fdStep = 1e-3, const GeodesicOptions& opt = {});

struct JacobiTransportResult {
    /// Parameter of the determinant's sign change: the boundary refocus
    /// zero when `refocusing`, else the first interior crossing (NaN if none).
    double signChangeParameter = 0.0;
    int signChangeCount = 0;        // interior crossings + boundary refocus zero
    int endSignRelativeToStart = +1;  // -1 iff the frame flips across the far boundary
    bool refocusing = false;
    double screenEndRatio = 0.0;    // |J1 extrapolated to u=0| / max |J1|
};

/// Transports the Jacobi frame (w1 vanishing at the start with unit screen
/// slope, w2 with gHat(w2, v) = 1) along the path's geodesic and analyzes
/// the 2-frame determinant det(w1, w2, v).  More than one interior
/// crossing raises MultipleSignChanges.
JacobiTransportResult jacobiTransport(const WeylChartStructure& W, const GeodesicPath& path,
                                      const GeodesicOptions& opt = {});

/// Diagnostic: exponent p with (Weyl affine parameter) ~ u^{-p} toward the
/// future end, by log-log regression on a path integrated with
/// traceWeylAffine.  The conformally compact normalization gives p = 1.
double affineDivergenceExponent(const GeodesicPath& path);

}  // namespace miniweyl
