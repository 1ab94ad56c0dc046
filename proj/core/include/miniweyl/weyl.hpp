#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include <Eigen/Core>

#include "miniweyl/sphere.hpp"

namespace miniweyl {

/// Point of the chart domain S^2 x [T-, T+]: time coordinate T plus the
/// sphere factor's affine coordinate in the given chart.  Coordinate order
/// for all component arrays is (T, Re x, Im x).
struct ChartPoint {
    double T = 0.0;
    cplx x{0.0, 0.0};
    int chart = 0;

    SpherePoint spherePoint() const { return SpherePoint::fromAffine(x, chart); }
    static ChartPoint at(double T, const SpherePoint& p) {
        const int c = p.activeChart();
        return ChartPoint{T, p.affine(c), c};
    }
};

/// Christoffel symbols Gamma^k_{ij}: coeffs[k](i, j), symmetric in (i, j).
using Coeffs3 = std::array<Eigen::Matrix3d, 3>;

/// Conformally compactified Weyl structure presented in chart form: the
/// rescaled metric gHat (signature -++), the 1-form alphaHat with
/// nabla gHat = alphaHat (x) gHat, and a defining function u positive
/// inside and vanishing with nonzero differential on both boundary slices.
/// Metric and u evaluate on the closed domain; connection-level quantities
/// are used only inside the collar.
class WeylChartStructure {
public:
    virtual ~WeylChartStructure() = default;

    virtual Eigen::Matrix3d metric(const ChartPoint& x) const = 0;
    virtual Eigen::Vector3d alphaForm(const ChartPoint& x) const = 0;
    virtual double definingFunction(const ChartPoint& x) const = 0;

    virtual double pastBoundaryT() const = 0;
    virtual double futureBoundaryT() const = 0;
    virtual double collar() const { return 1e-3; }
    double pastCollarT() const { return pastBoundaryT() + collar(); }
    double futureCollarT() const { return futureBoundaryT() - collar(); }

    virtual std::string name() const = 0;

    virtual bool hasClosedFormConnection() const { return false; }
    /// Levi-Civita symbols of gHat (not the Weyl connection); the default
    /// falls back to finite differences of the metric.
    virtual Coeffs3 leviCivita(const ChartPoint& x) const;
    virtual bool hasClosedFormJacobi() const { return false; }
    /// Matrix of X -> R(X, v)v for the Weyl connection's curvature.
    virtual Eigen::Matrix3d jacobiOperator(const ChartPoint& x, const Eigen::Vector3d& v) const;
};

/// Compactified de Sitter: gHat = -dT^2 + round sphere on S^2 x
/// [-pi/2 + delta, pi/2 - delta], alphaHat = -2 tan(T) dT, u = cos T.
class DeSitterStructure final : public WeylChartStructure {
public:
    explicit DeSitterStructure(double delta = 1e-3) : delta_(delta) {}
    Eigen::Matrix3d metric(const ChartPoint& x) const override;
    Eigen::Vector3d alphaForm(const ChartPoint& x) const override;
    double definingFunction(const ChartPoint& x) const override;
    double pastBoundaryT() const override { return -M_PI / 2; }
    double futureBoundaryT() const override { return M_PI / 2; }
    double collar() const override { return delta_; }
    std::string name() const override { return "desitter"; }
    bool hasClosedFormConnection() const override { return true; }
    Coeffs3 leviCivita(const ChartPoint& x) const override;
    bool hasClosedFormJacobi() const override { return true; }
    Eigen::Matrix3d jacobiOperator(const ChartPoint& x, const Eigen::Vector3d& v) const override;

private:
    double delta_;
};

/// Static product cylinder -dT^2 + round sphere on S^2 x [-h/2, h/2] with
/// alphaHat = 0 and u = (h/2 - T)(T + h/2) normalized to u(0) = 1.  Not
/// Einstein-Weyl and not conformally compact; serves as the contrast case.
class StaticCylinderStructure final : public WeylChartStructure {
public:
    explicit StaticCylinderStructure(double height = 2.0, double delta = 1e-3)
        : half_(height / 2), delta_(delta) {}
    Eigen::Matrix3d metric(const ChartPoint& x) const override;
    Eigen::Vector3d alphaForm(const ChartPoint&) const override { return Eigen::Vector3d::Zero(); }
    double definingFunction(const ChartPoint& x) const override;
    double pastBoundaryT() const override { return -half_; }
    double futureBoundaryT() const override { return half_; }
    double collar() const override { return delta_; }
    std::string name() const override { return "cylinder"; }
    bool hasClosedFormConnection() const override { return true; }
    Coeffs3 leviCivita(const ChartPoint& x) const override;
    bool hasClosedFormJacobi() const override { return true; }
    Eigen::Matrix3d jacobiOperator(const ChartPoint& x, const Eigen::Vector3d& v) const override;

private:
    double half_;
    double delta_;
};

/// gHat -> exp(2 phi) gHat, alphaHat -> alphaHat + 2 dphi.  phi is a
/// function of (T, sphere point) so its chart expressions agree; dphi is
/// taken by central differences.  The Weyl connection is unchanged.
class ConformalRescaleStructure final : public WeylChartStructure {
public:
    ConformalRescaleStructure(std::shared_ptr<const WeylChartStructure> base,
                              std::function<double(double, const SpherePoint&)> phi);
    Eigen::Matrix3d metric(const ChartPoint& x) const override;
    Eigen::Vector3d alphaForm(const ChartPoint& x) const override;
    double definingFunction(const ChartPoint& x) const override;
    double pastBoundaryT() const override { return base_->pastBoundaryT(); }
    double futureBoundaryT() const override { return base_->futureBoundaryT(); }
    double collar() const override { return base_->collar(); }
    std::string name() const override { return base_->name() + "+rescale"; }

private:
    double phiAt(const ChartPoint& x) const;
    std::shared_ptr<const WeylChartStructure> base_;
    std::function<double(double, const SpherePoint&)> phi_;
};

struct ConnectionCoeffs {
    Coeffs3 gamma;  // Weyl connection symbols, symmetric lower indices
};

struct DerivativeOptions {
    double hMetric = 6.06e-6;           // cbrt(machine epsilon) scale
    double hGamma = 1e-3;               // step for derivatives of Gamma
    double maxRichardsonError = 1e-3;   // StepTooLarge threshold
    bool scaleStepsWithU = true;        // shrink steps near the collar
};

/// Weyl connection symbols Gamma_LC(gHat) - (alpha_i d^k_j + alpha_j d^k_i
/// - gHat_ij alpha^k)/2, satisfying nabla gHat = alphaHat (x) gHat.
ConnectionCoeffs weylConnectionCoeffs(const WeylChartStructure& W, const ChartPoint& x,
                                      const DerivativeOptions& opt = {});

/// Finite-difference check of nabla gHat - alphaHat (x) gHat; returns the
/// max-norm over components.
double metricCompatibilityResidual(const WeylChartStructure& W, const ChartPoint& x,
                                   const DerivativeOptions& opt = {});

struct CurvatureResult {
    Eigen::Matrix3d symmetrizedRicci;  // R^k_ikj + R^k_jki
    double richardsonError = 0.0;
};

/// Symmetrized Ricci contraction of the Weyl connection's curvature,
/// assembled from finite differences of the symbols.  Throws StepTooLarge
/// when the Richardson estimate exceeds the configured threshold.
CurvatureResult curvatureRicci(const WeylChartStructure& W, const ChartPoint& x,
                               const DerivativeOptions& opt = {});

/// gHat-norm of the trace-free part of the symmetrized Ricci contraction;
/// zero exactly when the Einstein-Weyl equation holds at x.
double ewResidual(const WeylChartStructure& W, const ChartPoint& x,
                  const DerivativeOptions& opt = {});

struct CompactnessOptions {
    std::size_t sphereSamples = 24;
    std::size_t collarLevels = 5;
    double boundaryMarginTol = 1e-6;   // items (i) and (iv)
    double smoothOneFormBound = 10.0;  // item (ii)
    double closedAlphaTol = 1e-8;      // item (iii)
};

struct CompactnessReport {
    double boundaryNondegeneracyMargin = 0.0;  // (i) min |eigenvalue| of boundary metric
    double singularPartSup = 0.0;              // (ii) sup |alpha - 2 du/u| near the boundary
    double singularPartAtBoundary = 0.0;       //      extrapolated to u = 0
    double closedAlphaSup = 0.0;               // (iii) |d alpha| at boundary samples
    double spacelikeMargin = 0.0;              // (iv) min eigenvalue (signed)
    bool passItemNondegenerate = false;
    bool passItemSingularForm = false;
    bool passItemClosedAlpha = false;
    bool passItemSpacelike = false;
    bool pass() const {
        return passItemNondegenerate && passItemSingularForm && passItemClosedAlpha &&
               passItemSpacelike;
    }
};

CompactnessReport conformalCompactnessCheck(const WeylChartStructure& W,
                                            const CompactnessOptions& opt = {});

}  // namespace miniweyl
