#include "miniweyl/weyl.hpp"

#include <cmath>

#include "miniweyl/errors.hpp"
#include "miniweyl/kahler.hpp"

namespace miniweyl {

namespace {

ChartPoint shifted(const ChartPoint& x, int axis, double h) {
    ChartPoint y = x;
    if (axis == 0) {
        y.T += h;
    } else if (axis == 1) {
        y.x += cplx(h, 0.0);
    } else {
        y.x += cplx(0.0, h);
    }
    return y;
}

double stepScale(const WeylChartStructure& W, const ChartPoint& x, bool scale) {
    if (!scale) return 1.0;
    const double u = W.definingFunction(x);
    return std::clamp(u, 0.05, 1.0);
}

// Five-point first derivative along an axis; *coarse gets the three-point
// value for a Richardson-style error estimate.
template <class F>
auto centralDeriv(F&& f, const ChartPoint& x, int axis, double h, decltype(f(x))* coarse) {
    const auto fp1 = f(shifted(x, axis, h));
    const auto fm1 = f(shifted(x, axis, -h));
    const auto fp2 = f(shifted(x, axis, 2 * h));
    const auto fm2 = f(shifted(x, axis, -2 * h));
    if (coarse) *coarse = (fp1 - fm1) / (2.0 * h);
    return (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h);
}

Eigen::Matrix3d metricInverse(const Eigen::Matrix3d& g) {
    const double det = g.determinant();
    if (!(std::abs(det) > 1e-12)) {
        fail(ErrorCode::SingularMetric, "chart metric is numerically singular");
    }
    return g.inverse();
}

Coeffs3 addWeylTerm(const Coeffs3& lc, const Eigen::Matrix3d& g, const Eigen::Vector3d& alpha) {
    const Eigen::Vector3d alphaUp = metricInverse(g) * alpha;
    Coeffs3 out = lc;
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double d = 0.0;
                if (k == j) d += alpha(i);
                if (k == i) d += alpha(j);
                d -= g(i, j) * alphaUp(k);
                out[k](i, j) -= 0.5 * d;
            }
        }
    }
    return out;
}

Coeffs3 subtractC(const Coeffs3& a, const Coeffs3& b) {
    Coeffs3 out;
    for (int k = 0; k < 3; ++k) out[k] = a[k] - b[k];
    return out;
}
Coeffs3 addC(const Coeffs3& a, const Coeffs3& b) {
    Coeffs3 out;
    for (int k = 0; k < 3; ++k) out[k] = a[k] + b[k];
    return out;
}
Coeffs3 scaleC(const Coeffs3& a, double s) {
    Coeffs3 out;
    for (int k = 0; k < 3; ++k) out[k] = a[k] * s;
    return out;
}
double maxNormC(const Coeffs3& a) {
    double m = 0.0;
    for (int k = 0; k < 3; ++k) m = std::max(m, a[k].cwiseAbs().maxCoeff());
    return m;
}

}  // namespace

Coeffs3 WeylChartStructure::leviCivita(const ChartPoint& x) const {
    DerivativeOptions opt;
    const double h = opt.hMetric * stepScale(*this, x, true);
    std::array<Eigen::Matrix3d, 3> dg;
    auto m = [this](const ChartPoint& p) { return metric(p); };
    for (int axis = 0; axis < 3; ++axis) {
        dg[axis] = centralDeriv(m, x, axis, h, static_cast<Eigen::Matrix3d*>(nullptr));
    }
    const Eigen::Matrix3d ginv = metricInverse(metric(x));
    Coeffs3 lc;
    for (int k = 0; k < 3; ++k) {
        lc[k].setZero();
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int l = 0; l < 3; ++l) {
                    s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                }
                lc[k](i, j) = 0.5 * s;
            }
        }
    }
    return lc;
}

Eigen::Matrix3d WeylChartStructure::jacobiOperator(const ChartPoint& x,
                                                   const Eigen::Vector3d& v) const {
    // R(X, v)v from finite differences of the Weyl symbols.
    DerivativeOptions opt;
    const double h = opt.hGamma * stepScale(*this, x, true);
    auto gamma = [this](const ChartPoint& p) {
        return addWeylTerm(leviCivita(p), metric(p), alphaForm(p));
    };
    std::array<Coeffs3, 3> dGamma;
    for (int axis = 0; axis < 3; ++axis) {
        Coeffs3 fp1 = gamma(shifted(x, axis, h));
        Coeffs3 fm1 = gamma(shifted(x, axis, -h));
        dGamma[axis] = scaleC(subtractC(fp1, fm1), 1.0 / (2.0 * h));
    }
    const Coeffs3 G = gamma(x);
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    // (R(e_c, v)v)^a = v^d v^b [ d_c G^a_db - d_d G^a_cb + G^a_ce G^e_db - G^a_de G^e_cb ]
    for (int a = 0; a < 3; ++a) {
        for (int c = 0; c < 3; ++c) {
            double s = 0.0;
            for (int b = 0; b < 3; ++b) {
                for (int d = 0; d < 3; ++d) {
                    double term = dGamma[c][a](d, b) - dGamma[d][a](c, b);
                    for (int e = 0; e < 3; ++e) {
                        term += G[a](c, e) * G[e](d, b) - G[a](d, e) * G[e](c, b);
                    }
                    s += v(d) * v(b) * term;
                }
            }
            A(a, c) = s;
        }
    }
    return A;
}

Eigen::Matrix3d DeSitterStructure::metric(const ChartPoint& x) const {
    const double rho = roundAreaDensity(x.x);
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    g(0, 0) = -1.0;
    g(1, 1) = rho;
    g(2, 2) = rho;
    return g;
}

Eigen::Vector3d DeSitterStructure::alphaForm(const ChartPoint& x) const {
    return Eigen::Vector3d(-2.0 * std::tan(x.T), 0.0, 0.0);
}

double DeSitterStructure::definingFunction(const ChartPoint& x) const { return std::cos(x.T); }

namespace {

Coeffs3 roundSphereChristoffels(cplx x) {
    const double r2 = std::norm(x);
    const double px = -2.0 * x.real() / (1.0 + r2);
    const double py = -2.0 * x.imag() / (1.0 + r2);
    Coeffs3 lc;
    for (int k = 0; k < 3; ++k) lc[k].setZero();
    lc[1](1, 1) = px; lc[1](1, 2) = lc[1](2, 1) = py; lc[1](2, 2) = -px;
    lc[2](1, 1) = -py; lc[2](1, 2) = lc[2](2, 1) = px; lc[2](2, 2) = py;
    return lc;
}

}  // namespace

Coeffs3 DeSitterStructure::leviCivita(const ChartPoint& x) const {
    return roundSphereChristoffels(x.x);
}

Eigen::Matrix3d DeSitterStructure::jacobiOperator(const ChartPoint& x,
                                                  const Eigen::Vector3d& v) const {
    // The Weyl connection is the Levi-Civita connection of the physical
    // metric sec^2(T) gHat, of constant curvature +1:
    // R(X,v)v = sec^2(T) (gHat(v,v) X - gHat(X,v) v).
    const Eigen::Matrix3d g = metric(x);
    const double sec2 = 1.0 / std::pow(std::cos(x.T), 2);
    const Eigen::Vector3d gv = g * v;
    return sec2 * (gv.dot(v) * Eigen::Matrix3d::Identity() - v * gv.transpose());
}

Eigen::Matrix3d StaticCylinderStructure::metric(const ChartPoint& x) const {
    const double rho = roundAreaDensity(x.x);
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    g(0, 0) = -1.0;
    g(1, 1) = rho;
    g(2, 2) = rho;
    return g;
}

double StaticCylinderStructure::definingFunction(const ChartPoint& x) const {
    return (half_ - x.T) * (x.T + half_) / (half_ * half_);
}

Coeffs3 StaticCylinderStructure::leviCivita(const ChartPoint& x) const {
    return roundSphereChristoffels(x.x);
}

Eigen::Matrix3d StaticCylinderStructure::jacobiOperator(const ChartPoint& x,
                                                        const Eigen::Vector3d& v) const {
    // Product curvature: only the round-sphere block contributes.
    const double rho = roundAreaDensity(x.x);
    const Eigen::Vector2d vs(v(1), v(2));
    const Eigen::Vector2d gvs = rho * vs;
    Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
    A.block<2, 2>(1, 1) = gvs.dot(vs) * Eigen::Matrix2d::Identity() - vs * gvs.transpose();
    return A;
}

ConformalRescaleStructure::ConformalRescaleStructure(
    std::shared_ptr<const WeylChartStructure> base,
    std::function<double(double, const SpherePoint&)> phi)
    : base_(std::move(base)), phi_(std::move(phi)) {}

double ConformalRescaleStructure::phiAt(const ChartPoint& x) const {
    return phi_(x.T, x.spherePoint());
}

Eigen::Matrix3d ConformalRescaleStructure::metric(const ChartPoint& x) const {
    return std::exp(2.0 * phiAt(x)) * base_->metric(x);
}

Eigen::Vector3d ConformalRescaleStructure::alphaForm(const ChartPoint& x) const {
    const double h = 1e-6;
    Eigen::Vector3d dphi;
    for (int axis = 0; axis < 3; ++axis) {
        dphi(axis) = (phiAt(shifted(x, axis, h)) - phiAt(shifted(x, axis, -h))) / (2.0 * h);
    }
    return base_->alphaForm(x) + 2.0 * dphi;
}

double ConformalRescaleStructure::definingFunction(const ChartPoint& x) const {
    return base_->definingFunction(x);
}

ConnectionCoeffs weylConnectionCoeffs(const WeylChartStructure& W, const ChartPoint& x,
                                      const DerivativeOptions&) {
    return ConnectionCoeffs{addWeylTerm(W.leviCivita(x), W.metric(x), W.alphaForm(x))};
}

double metricCompatibilityResidual(const WeylChartStructure& W, const ChartPoint& x,
                                   const DerivativeOptions& opt) {
    const Coeffs3 G = weylConnectionCoeffs(W, x, opt).gamma;
    const Eigen::Vector3d alpha = W.alphaForm(x);
    const Eigen::Matrix3d g = W.metric(x);
    const double h = opt.hMetric * stepScale(W, x, opt.scaleStepsWithU);
    auto m = [&](const ChartPoint& p) { return W.metric(p); };
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        const Eigen::Matrix3d dg =
            centralDeriv(m, x, k, h, static_cast<Eigen::Matrix3d*>(nullptr));
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double nabla = dg(i, j) - alpha(k) * g(i, j);
                for (int l = 0; l < 3; ++l) {
                    nabla -= G[l](k, i) * g(l, j) + G[l](k, j) * g(i, l);
                }
                worst = std::max(worst, std::abs(nabla));
            }
        }
    }
    return worst;
}

CurvatureResult curvatureRicci(const WeylChartStructure& W, const ChartPoint& x,
                               const DerivativeOptions& opt) {
    const double h = opt.hGamma * stepScale(W, x, opt.scaleStepsWithU);
    if (x.T - 2.0 * h < W.pastCollarT() || x.T + 2.0 * h > W.futureCollarT()) {
        fail(ErrorCode::StepTooLarge, "curvature point too close to the collar for step " +
                                          std::to_string(h));
    }
    auto gamma = [&](const ChartPoint& p) {
        return weylConnectionCoeffs(W, p, opt).gamma;
    };
    std::array<Coeffs3, 3> dG;
    double richardson = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        Coeffs3 coarse;
        const Coeffs3 fp1 = gamma(shifted(x, axis, h));
        const Coeffs3 fm1 = gamma(shifted(x, axis, -h));
        const Coeffs3 fp2 = gamma(shifted(x, axis, 2 * h));
        const Coeffs3 fm2 = gamma(shifted(x, axis, -2 * h));
        coarse = scaleC(subtractC(fp1, fm1), 1.0 / (2.0 * h));
        dG[axis] = scaleC(subtractC(scaleC(subtractC(fp1, fm1), 8.0), subtractC(fp2, fm2)),
                          1.0 / (12.0 * h));
        richardson = std::max(richardson, maxNormC(subtractC(dG[axis], coarse)));
    }
    if (richardson > opt.maxRichardsonError) {
        fail(ErrorCode::StepTooLarge,
             "Richardson estimate " + std::to_string(richardson) + " exceeds tolerance");
    }
    const Coeffs3 G = gamma(x);
    Eigen::Matrix3d ric = Eigen::Matrix3d::Zero();
    // Ric_ij = sum_k [ d_k G^k_ji - d_j G^k_ki + G^k_ke G^e_ji - G^k_je G^e_ki ]
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) {
                s += dG[k][k](j, i) - dG[j][k](k, i);
                for (int e = 0; e < 3; ++e) {
                    s += G[k](k, e) * G[e](j, i) - G[k](j, e) * G[e](k, i);
                }
            }
            ric(i, j) = s;
        }
    }
    CurvatureResult out;
    out.symmetrizedRicci = ric + ric.transpose();
    out.richardsonError = richardson;
    return out;
}

double ewResidual(const WeylChartStructure& W, const ChartPoint& x,
                  const DerivativeOptions& opt) {
    const Eigen::Matrix3d S = curvatureRicci(W, x, opt).symmetrizedRicci;
    const Eigen::Matrix3d g = W.metric(x);
    const Eigen::Matrix3d ginv = metricInverse(g);
    const double trace = (ginv * S).trace();
    const Eigen::Matrix3d traceFree = S - (trace / 3.0) * g;
    return (ginv * traceFree).norm();
}

namespace {

std::vector<SpherePoint> spreadSphereSamples(std::size_t n) {
    std::vector<SpherePoint> pts;
    pts.reserve(n);
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = ga * static_cast<double>(i);
        pts.push_back(SpherePoint::fromUnitVec(Vec3(r * std::cos(phi), r * std::sin(phi), z)));
    }
    return pts;
}

}  // namespace

CompactnessReport conformalCompactnessCheck(const WeylChartStructure& W,
                                            const CompactnessOptions& opt) {
    CompactnessReport rep;
    const std::vector<SpherePoint> samples = spreadSphereSamples(opt.sphereSamples);

    double nondegen = 1e300, spacelike = 1e300;
    for (const double Tb : {W.pastBoundaryT(), W.futureBoundaryT()}) {
        for (const SpherePoint& p : samples) {
            const Eigen::Matrix3d g = W.metric(ChartPoint::at(Tb, p));
            const Eigen::Matrix2d gs = g.block<2, 2>(1, 1);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gs);
            nondegen = std::min(nondegen, es.eigenvalues().cwiseAbs().minCoeff());
            spacelike = std::min(spacelike, es.eigenvalues().minCoeff());
        }
    }
    rep.boundaryNondegeneracyMargin = nondegen;
    rep.spacelikeMargin = spacelike;
    rep.passItemNondegenerate = nondegen > opt.boundaryMarginTol;
    rep.passItemSpacelike = spacelike > opt.boundaryMarginTol;

    // Item (ii): beta = alpha - 2 du/u on a collar-refined grid, with a
    // quadratic-in-u extrapolation of |beta| to the boundary.
    const double hu = 1e-7;
    auto beta = [&](const ChartPoint& x) {
        const double u = W.definingFunction(x);
        Eigen::Vector3d du;
        for (int axis = 0; axis < 3; ++axis) {
            du(axis) = (W.definingFunction(shifted(x, axis, hu)) -
                        W.definingFunction(shifted(x, axis, -hu))) /
                       (2.0 * hu);
        }
        return Eigen::Vector3d(W.alphaForm(x) - 2.0 / u * du);
    };
    double sup = 0.0, supBoundary = 0.0;
    for (const bool past : {true, false}) {
        const double Tb = past ? W.pastBoundaryT() : W.futureBoundaryT();
        const double into = past ? 1.0 : -1.0;
        for (const SpherePoint& p : samples) {
            std::vector<double> us, vals;
            for (std::size_t j = 0; j < opt.collarLevels; ++j) {
                const double T = Tb + into * W.collar() * static_cast<double>(1u << j);
                const ChartPoint x = ChartPoint::at(T, p);
                const double bnorm = beta(x).norm();
                sup = std::max(sup, bnorm);
                us.push_back(W.definingFunction(x));
                vals.push_back(bnorm);
            }
            // quadratic fit through the three innermost levels
            const double u0 = us[0], u1 = us[1], u2 = us[2];
            const double l0 = (u1 * u2) / ((u0 - u1) * (u0 - u2));
            const double l1 = (u0 * u2) / ((u1 - u0) * (u1 - u2));
            const double l2 = (u0 * u1) / ((u2 - u0) * (u2 - u1));
            supBoundary = std::max(supBoundary,
                                   std::abs(vals[0] * l0 + vals[1] * l1 + vals[2] * l2));
        }
    }
    rep.singularPartSup = sup;
    rep.singularPartAtBoundary = supBoundary;
    rep.passItemSingularForm = sup <= opt.smoothOneFormBound;

    // Item (iii): |d alpha| at collar-edge samples.
    const double ha = 1e-5;
    double curl = 0.0;
    for (const double Tb : {W.pastCollarT(), W.futureCollarT()}) {
        for (const SpherePoint& p : samples) {
            const ChartPoint x = ChartPoint::at(Tb, p);
            Eigen::Matrix3d da = Eigen::Matrix3d::Zero();
            for (int i = 0; i < 3; ++i) {
                const Eigen::Vector3d ap = W.alphaForm(shifted(x, i, ha));
                const Eigen::Vector3d am = W.alphaForm(shifted(x, i, -ha));
                da.row(i) = ((ap - am) / (2.0 * ha)).transpose();
            }
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) {
                    curl = std::max(curl, std::abs(da(i, j) - da(j, i)));
                }
            }
        }
    }
    rep.closedAlphaSup = curl;
    rep.passItemClosedAlpha = curl <= opt.closedAlphaTol;
    return rep;
}

}  // namespace miniweyl
