#include "miniweyl/scattering.hpp"

#include <cmath>

#include "miniweyl/errors.hpp"
#include "miniweyl/ode.hpp"
#include "miniweyl/parallel.hpp"

namespace miniweyl {

namespace {

Eigen::Vector3d gammaContract(const Coeffs3& G, const Eigen::Vector3d& a,
                              const Eigen::Vector3d& b) {
    Eigen::Vector3d out;
    for (int k = 0; k < 3; ++k) out(k) = a.dot(G[k] * b);
    return out;
}

Coeffs3 weylGamma(const WeylChartStructure& W, const ChartPoint& x) {
    Coeffs3 lc = W.leviCivita(x);
    const Eigen::Matrix3d g = W.metric(x);
    const Eigen::Vector3d alpha = W.alphaForm(x);
    const Eigen::Vector3d alphaUp = g.inverse() * alpha;
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double d = 0.0;
                if (k == j) d += alpha(i);
                if (k == i) d += alpha(j);
                d -= g(i, j) * alphaUp(k);
                lc[k](i, j) -= 0.5 * d;
            }
        }
    }
    return lc;
}

// Rescale the spatial velocity so gHat(v, v) = 0, keeping v^T fixed.
// Returns the drift |gHat(v,v)| before projection.
double projectNull(const Eigen::Matrix3d& g, Eigen::Vector3d& v) {
    const double drift = std::abs(v.dot(g * v));
    const Eigen::Vector2d vs(v(1), v(2));
    const Eigen::Matrix2d gs = g.block<2, 2>(1, 1);
    const double A = vs.dot(gs * vs);
    const double B = v(0) * (g(0, 1) * vs(0) + g(0, 2) * vs(1));
    const double C = g(0, 0) * v(0) * v(0);
    if (A <= 0.0) return drift;
    // root of A k^2 + 2 B k + C nearest 1
    const double disc = B * B - A * C;
    if (disc < 0.0) return drift;
    const double r1 = (-B + std::sqrt(disc)) / A;
    const double r2 = (-B - std::sqrt(disc)) / A;
    const double k = (std::abs(r1 - 1.0) < std::abs(r2 - 1.0)) ? r1 : r2;
    v(1) *= k;
    v(2) *= k;
    return drift;
}

struct GeoState {
    ChartPoint x;
    Eigen::Vector3d v;
};

GeoState unpack(const std::vector<double>& y, int chart) {
    GeoState s;
    s.x = ChartPoint{y[0], cplx(y[1], y[2]), chart};
    s.v = Eigen::Vector3d(y[3], y[4], y[5]);
    return s;
}

void switchChartInPlace(std::vector<double>& y, int& chart) {
    const cplx x(y[1], y[2]);
    const cplx xNew = 1.0 / x;
    const cplx scale = -xNew * xNew;  // d(1/x)/dx
    const cplx vNew = scale * cplx(y[4], y[5]);
    y[1] = xNew.real();
    y[2] = xNew.imag();
    y[4] = vNew.real();
    y[5] = vNew.imag();
    chart = 1 - chart;
}

// Second-order Taylor step of the geodesic from the boundary slice to the
// collar edge; the Levi-Civita symbols of gHat are regular at u = 0.
GeoState taylorEntry(const WeylChartStructure& W, const SpherePoint& p,
                     const Eigen::Vector3d& v0, double targetT) {
    ChartPoint x0 = ChartPoint::at(v0(0) > 0 ? W.pastBoundaryT() : W.futureBoundaryT(), p);
    const Coeffs3 lc = W.leviCivita(x0);
    const Eigen::Vector3d acc = -gammaContract(lc, v0, v0);
    double sigma = (targetT - x0.T) / v0(0);
    for (int i = 0; i < 2; ++i) {  // refine against the quadratic in T
        const double Tq = x0.T + v0(0) * sigma + 0.5 * acc(0) * sigma * sigma;
        sigma += (targetT - Tq) / (v0(0) + acc(0) * sigma);
    }
    GeoState out;
    out.x = ChartPoint{x0.T + v0(0) * sigma + 0.5 * acc(0) * sigma * sigma,
                       x0.x + cplx(v0(1) * sigma + 0.5 * acc(1) * sigma * sigma,
                                   v0(2) * sigma + 0.5 * acc(2) * sigma * sigma),
                       x0.chart};
    out.v = v0 + sigma * acc;
    return out;
}

Eigen::Vector3d nullVectorAt(const WeylChartStructure& W, const ChartPoint& x,
                             cplx chartDirection, bool futurePointing) {
    const Eigen::Matrix3d g = W.metric(x);
    const double rho = g(1, 1);
    const cplx e = chartDirection / std::abs(chartDirection) / std::sqrt(rho);
    Eigen::Vector3d v(futurePointing ? 1.0 : -1.0, e.real(), e.imag());
    v(0) *= std::sqrt(-((e.real() * e.real() + e.imag() * e.imag()) * rho) / g(0, 0));
    return v;
}

struct BoundaryTarget {
    double T;
    double u;
};

}  // namespace

GeodesicPath integrateNullGeodesicDir(const WeylChartStructure& W, const SpherePoint& p,
                                      cplx chartDirection, bool fromPast,
                                      const GeodesicOptions& opt) {
    GeodesicPath path;
    path.towardFuture = fromPast;
    path.pastPoint = p;

    const double startBoundary = fromPast ? W.pastBoundaryT() : W.futureBoundaryT();
    const double startCollar = fromPast ? W.pastCollarT() : W.futureCollarT();
    const double endBoundary = fromPast ? W.futureBoundaryT() : W.pastBoundaryT();
    const double endCollar = fromPast ? W.futureCollarT() : W.pastCollarT();

    ChartPoint x0 = ChartPoint::at(startBoundary, p);
    Eigen::Vector3d v0 = nullVectorAt(W, x0, chartDirection, fromPast);
    GeoState entry = taylorEntry(W, p, v0, startCollar);
    {
        const Eigen::Matrix3d g = W.metric(entry.x);
        projectNull(g, entry.v);
    }

    int chart = entry.x.chart;
    std::vector<double> y{entry.x.T, entry.x.x.real(), entry.x.x.imag(),
                          entry.v(0), entry.v(1), entry.v(2)};
    if (opt.traceWeylAffine) {
        y.push_back(0.0);  // log speed
        y.push_back(0.0);  // Weyl affine parameter
    }

    auto rhs = [&](double, const std::vector<double>& yy, std::vector<double>& dy) {
        const GeoState s = unpack(yy, chart);
        const Coeffs3 lc = W.leviCivita(s.x);
        const Eigen::Vector3d acc = -gammaContract(lc, s.v, s.v);
        dy[0] = s.v(0);
        dy[1] = s.v(1);
        dy[2] = s.v(2);
        dy[3] = acc(0);
        dy[4] = acc(1);
        dy[5] = acc(2);
        if (yy.size() > 6) {
            const double av = W.alphaForm(s.x).dot(s.v);
            dy[6] = av;
            dy[7] = std::exp(yy[6]);
        }
    };

    OdeOptions odeOpt;
    odeOpt.rtol = opt.rtol;
    odeOpt.atol = opt.atol;
    odeOpt.maxSteps = opt.maxSteps;
    odeOpt.hInit = 1e-3;
    double drift = 0.0;
    odeOpt.projector = [&](double, std::vector<double>& yy) {
        GeoState s = unpack(yy, chart);
        drift = std::max(drift, projectNull(W.metric(s.x), s.v));
        yy[3] = s.v(0);
        yy[4] = s.v(1);
        yy[5] = s.v(2);
        if (std::abs(cplx(yy[1], yy[2])) > opt.chartSwitchRadius) {
            switchChartInPlace(yy, chart);
        }
    };

    // Boundary-approach targets: stop at collar multiples 8, 4, 2, 1 and
    // record the states for the u = 0 extrapolation.
    const double into = fromPast ? -1.0 : 1.0;  // sign from endBoundary toward interior
    std::vector<BoundaryTarget> targets;
    for (const double k : {8.0, 4.0, 2.0, 1.0}) {
        targets.push_back({endBoundary + into * W.collar() * k, 0.0});
    }

    const double sMax = 16.0 * std::abs(endBoundary - startBoundary) + 16.0;
    double sNow = 0.0;
    std::vector<PathSample> samples;
    auto record = [&](double s, const std::vector<double>& yy) {
        PathSample ps;
        ps.s = s;
        ps.x = ChartPoint{yy[0], cplx(yy[1], yy[2]), chart};
        ps.v = Eigen::Vector3d(yy[3], yy[4], yy[5]);
        ps.u = W.definingFunction(ps.x);
        if (yy.size() > 6) ps.weylAffine = yy[7];
        samples.push_back(ps);
    };
    record(0.0, y);

    std::vector<std::vector<double>> targetStates;
    const double dirT = fromPast ? 1.0 : -1.0;
    for (const BoundaryTarget& target : targets) {
        bool reached = false;
        auto event = [&](const DenseStep& ds, double& tStop) {
            std::vector<double> probe;
            ds.eval(1.0, probe);
            if (dirT * (probe[0] - target.T) < 0.0) return false;
            // bisection on the dense interpolant for T = target
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                ds.eval(mid, probe);
                (dirT * (probe[0] - target.T) < 0.0 ? lo : hi) = mid;
            }
            tStop = ds.t0 + 0.5 * (lo + hi) * ds.h;
            reached = true;
            return true;
        };
        OdeOptions stepOpt = odeOpt;
        stepOpt.watcher = [&](double s, const std::vector<double>& yy) {
            record(s, yy);
            return false;
        };
        integrateOde(rhs, y, sNow, sNow + sMax, stepOpt, event);
        if (!reached) {
            fail(ErrorCode::TrappedGeodesic, "null geodesic failed to reach the far collar");
        }
        sNow = samples.empty() ? sNow : sNow;
        // the event stop point is the current state; recover s from T progress
        sNow = samples.back().s;  // last full step recorded
        // account for the partial step: recompute s from the state directly
        {
            PathSample ps;
            ps.x = ChartPoint{y[0], cplx(y[1], y[2]), chart};
            ps.v = Eigen::Vector3d(y[3], y[4], y[5]);
            ps.u = W.definingFunction(ps.x);
            if (y.size() > 6) ps.weylAffine = y[7];
            // parameter value of the event stop: advance by (T-progress)/vT
            const double sEvent = samples.back().s +
                (y[0] - samples.back().x.T) / (0.5 * (ps.v(0) + samples.back().v(0)));
            ps.s = sEvent;
            samples.push_back(ps);
            sNow = sEvent;
        }
        targetStates.push_back(y);
    }

    path.maxNullDrift = drift;
    path.samples = std::move(samples);

    // Quadratic Richardson extrapolation of the sphere position to u = 0,
    // with the cubic refinement as the error estimate.
    std::vector<double> us;
    std::vector<Vec3> ns;
    for (std::size_t i = 0; i < targetStates.size(); ++i) {
        const auto& yy = targetStates[i];
        const ChartPoint cp{yy[0], cplx(yy[1], yy[2]),
                            path.samples[path.samples.size() - targetStates.size() + i].x.chart};
        us.push_back(W.definingFunction(cp));
        ns.push_back(cp.spherePoint().unitVec());
    }
    auto lagrangeAtZero = [&](std::size_t from) {
        Vec3 acc = Vec3::Zero();
        for (std::size_t i = from; i < us.size(); ++i) {
            double li = 1.0;
            for (std::size_t j = from; j < us.size(); ++j) {
                if (i == j) continue;
                li *= us[j] / (us[j] - us[i]);
            }
            acc += li * ns[i];
        }
        return acc;
    };
    const Vec3 cubic = lagrangeAtZero(0);
    const Vec3 quad = lagrangeAtZero(1);
    path.futurePoint = SpherePoint::fromUnitVec(cubic);
    path.extrapolationError = (cubic - quad).norm();

    const PathSample& last = path.samples.back();
    path.finalChart = last.x.chart;
    path.finalDirection = cplx(last.v(1), last.v(2));
    return path;
}

GeodesicPath integrateNullGeodesic(const WeylChartStructure& W, const SpherePoint& p,
                                   double directionAngle, bool fromPast,
                                   const GeodesicOptions& opt) {
    return integrateNullGeodesicDir(W, p, std::polar(1.0, directionAngle), fromPast, opt);
}

RefocusResult refocusCheck(const WeylChartStructure& W, const SpherePoint& p,
                           std::size_t nDirections, const GeodesicOptions& opt) {
    std::vector<SpherePoint> endpoints(nDirections);
    parallelFor(nDirections, [&](std::size_t k) {
        const double beta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(nDirections);
        endpoints[k] = integrateNullGeodesic(W, p, beta, true, opt).futurePoint;
    });
    RefocusResult res;
    Vec3 mean = Vec3::Zero();
    for (const auto& q : endpoints) mean += q.unitVec();
    res.meanQ = SpherePoint::fromUnitVec(mean / static_cast<double>(nDirections));
    for (std::size_t i = 0; i < nDirections; ++i) {
        for (std::size_t j = i + 1; j < nDirections; ++j) {
            res.dispersion = std::max(res.dispersion, chordalDistance(endpoints[i], endpoints[j]));
        }
    }
    return res;
}

ScatteringJacobian scatteringJacobian(const WeylChartStructure& W, const SpherePoint& p,
                                      double fdStep, const GeodesicOptions& opt) {
    const int cin = p.activeChart();
    const cplx w = p.affine(cin);
    auto endpoint = [&](cplx dw) {
        return integrateNullGeodesic(W, SpherePoint::fromAffine(w + dw, cin), 0.0, true, opt)
            .futurePoint;
    };
    const SpherePoint q0 = endpoint(0.0);
    const int cout = q0.activeChart();
    auto coord = [&](const SpherePoint& q) { return q.affine(cout); };
    const cplx fx = (coord(endpoint(cplx(fdStep, 0))) - coord(endpoint(cplx(-fdStep, 0)))) /
                    (2.0 * fdStep);
    const cplx fy = (coord(endpoint(cplx(0, fdStep))) - coord(endpoint(cplx(0, -fdStep)))) /
                    (2.0 * fdStep);
    ScatteringJacobian J;
    J.chartIn = cin;
    J.chartOut = cout;
    J.matrix << fx.real(), fy.real(), fx.imag(), fy.imag();
    return J;
}

std::vector<ScatteringSample> scatteringMap(const WeylChartStructure& W,
                                            const ScatteringGridSpec& grid,
                                            const GeodesicOptions& opt) {
    std::vector<SpherePoint> points;
    for (std::size_t i = 0; i < grid.nTheta; ++i) {
        const double theta = M_PI * (static_cast<double>(i) + 0.5) /
                             static_cast<double>(grid.nTheta);
        for (std::size_t j = 0; j < grid.nPhi; ++j) {
            const double phi = 2.0 * M_PI * static_cast<double>(j) /
                               static_cast<double>(grid.nPhi);
            points.push_back(SpherePoint::fromUnitVec(
                Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                     std::cos(theta))));
        }
    }
    std::vector<ScatteringSample> out(points.size());
    parallelFor(points.size(), [&](std::size_t i) {
        ScatteringSample s;
        s.p = points[i];
        const RefocusResult rr = refocusCheck(W, points[i], grid.nDirections, opt);
        s.q = rr.meanQ;
        s.dispersion = rr.dispersion;
        s.ok = rr.dispersion <= grid.dispersionTol;
        if (grid.withJacobian && s.ok) {
            s.jacobianDet = scatteringJacobian(W, points[i], 1e-3, opt).det();
        }
        out[i] = s;
    });
    return out;
}

JacobiTransportResult jacobiTransport(const WeylChartStructure& W, const GeodesicPath& path,
                                      const GeodesicOptions& opt) {
    if (path.samples.size() < 2) {
        fail(ErrorCode::ConfigInvalid, "jacobi transport needs a completed path");
    }
    const PathSample& start = path.samples.front();
    const double sEnd = path.samples.back().s;

    // Frame initial data: screen unit vector w perpendicular to v, the
    // transverse null vector l with gHat(l, v) = 1.
    const Eigen::Matrix3d g0 = W.metric(start.x);
    const double rho0 = g0(1, 1);
    const cplx vs0(start.v(1), start.v(2));
    const cplx ws = cplx(0, 1) * vs0 / std::abs(vs0) / std::sqrt(rho0);
    const Eigen::Vector3d wHat(0.0, ws.real(), ws.imag());
    const double vsNorm2 = rho0 * std::norm(vs0);
    const Eigen::Vector3d ell =
        Eigen::Vector3d(-start.v(0), start.v(1), start.v(2)) / (2.0 * vsNorm2);

    // State: x(3) v(3) w1(3) p1(3) w2(3) p2(3) wpar(3)
    int chart = start.x.chart;
    std::vector<double> y(21, 0.0);
    y[0] = start.x.T; y[1] = start.x.x.real(); y[2] = start.x.x.imag();
    for (int i = 0; i < 3; ++i) {
        y[3 + i] = start.v(i);
        y[9 + i] = wHat(i);    // p1 = D_s w1 at start
        y[12 + i] = ell(i);    // w2
        y[18 + i] = wHat(i);   // parallel screen vector
    }

    auto rhs = [&](double, const std::vector<double>& yy, std::vector<double>& dy) {
        const ChartPoint x{yy[0], cplx(yy[1], yy[2]), chart};
        const Eigen::Vector3d v(yy[3], yy[4], yy[5]);
        const Eigen::Vector3d w1(yy[6], yy[7], yy[8]);
        const Eigen::Vector3d p1(yy[9], yy[10], yy[11]);
        const Eigen::Vector3d w2(yy[12], yy[13], yy[14]);
        const Eigen::Vector3d p2(yy[15], yy[16], yy[17]);
        const Eigen::Vector3d wp(yy[18], yy[19], yy[20]);

        const Coeffs3 lc = W.leviCivita(x);
        const Coeffs3 G = weylGamma(W, x);
        const double av = W.alphaForm(x).dot(v);
        const Eigen::Matrix3d A = W.jacobiOperator(x, v);

        const Eigen::Vector3d acc = -gammaContract(lc, v, v);
        const Eigen::Vector3d dw1 = p1 - gammaContract(G, v, w1);
        const Eigen::Vector3d dp1 = av * p1 - A * w1 - gammaContract(G, v, p1);
        const Eigen::Vector3d dw2 = p2 - gammaContract(G, v, w2);
        const Eigen::Vector3d dp2 = av * p2 - A * w2 - gammaContract(G, v, p2);
        const Eigen::Vector3d dwp = -gammaContract(G, v, wp);

        dy[0] = v(0); dy[1] = v(1); dy[2] = v(2);
        dy[3] = acc(0); dy[4] = acc(1); dy[5] = acc(2);
        for (int i = 0; i < 3; ++i) {
            dy[6 + i] = dw1(i);
            dy[9 + i] = dp1(i);
            dy[12 + i] = dw2(i);
            dy[15 + i] = dp2(i);
            dy[18 + i] = dwp(i);
        }
    };

    struct FrameSample {
        double s, u, det, screen;
    };
    std::vector<FrameSample> frames;
    auto record = [&](double s, const std::vector<double>& yy) {
        const ChartPoint x{yy[0], cplx(yy[1], yy[2]), chart};
        Eigen::Matrix3d F;
        F.col(0) = Eigen::Vector3d(yy[6], yy[7], yy[8]);
        F.col(1) = Eigen::Vector3d(yy[12], yy[13], yy[14]);
        F.col(2) = Eigen::Vector3d(yy[3], yy[4], yy[5]);
        const Eigen::Matrix3d g = W.metric(x);
        const Eigen::Vector3d wp(yy[18], yy[19], yy[20]);
        const double wpNorm = wp.dot(g * wp);
        const double screen = F.col(0).dot(g * wp) / wpNorm;
        frames.push_back({s, W.definingFunction(x), F.determinant(), screen});
        return false;
    };

    OdeOptions odeOpt;
    odeOpt.rtol = std::max(opt.rtol, 1e-9);
    odeOpt.atol = opt.atol;
    odeOpt.maxSteps = opt.maxSteps;
    odeOpt.hInit = 1e-3;
    odeOpt.projector = [&](double, std::vector<double>& yy) {
        if (std::abs(cplx(yy[1], yy[2])) > opt.chartSwitchRadius) {
            const cplx x(yy[1], yy[2]);
            const cplx xNew = 1.0 / x;
            const cplx scale = -xNew * xNew;
            yy[1] = xNew.real();
            yy[2] = xNew.imag();
            for (const int base : {3, 6, 9, 12, 15, 18}) {
                const cplx t = scale * cplx(yy[base + 1], yy[base + 2]);
                yy[base + 1] = t.real();
                yy[base + 2] = t.imag();
            }
            chart = 1 - chart;
        }
    };
    odeOpt.watcher = [&](double s, const std::vector<double>& yy) {
        record(s, yy);
        return false;
    };
    record(0.0, y);
    integrateOde(rhs, y, 0.0, sEnd, odeOpt);

    // Analysis: interior crossings of det (ignoring the anchored zero at
    // the start) and the boundary refocus zero of the screen component.
    double maxAbsDet = 0.0, maxAbsScreen = 0.0;
    for (const FrameSample& f : frames) {
        maxAbsDet = std::max(maxAbsDet, std::abs(f.det));
        maxAbsScreen = std::max(maxAbsScreen, std::abs(f.screen));
    }
    JacobiTransportResult res;
    int crossings = 0;
    double firstCrossing = std::numeric_limits<double>::quiet_NaN();
    const double deadBand = 1e-8 * maxAbsDet;
    double prev = 0.0;
    double prevS = 0.0;
    bool have = false;
    for (const FrameSample& f : frames) {
        if (std::abs(f.det) < deadBand) continue;
        if (have && f.det * prev < 0.0) {
            ++crossings;
            if (std::isnan(firstCrossing)) {
                firstCrossing = 0.5 * (prevS + f.s);
            }
        }
        prev = f.det;
        prevS = f.s;
        have = true;
    }
    if (crossings >= 2) {
        fail(ErrorCode::MultipleSignChanges,
             "frame determinant changed sign " + std::to_string(crossings) + " times");
    }

    // Extrapolate the screen scalar to u = 0 at the far end (quadratic).
    const std::size_t n = frames.size();
    std::size_t tail = std::min<std::size_t>(n, 6);
    double j0 = 0.0;
    {
        std::vector<double> us, js;
        for (std::size_t i = n - tail; i < n; ++i) {
            us.push_back(frames[i].u);
            js.push_back(frames[i].screen);
        }
        // quadratic least squares in u evaluated at 0
        Eigen::MatrixXd Ax(us.size(), 3);
        Eigen::VectorXd bx(us.size());
        for (std::size_t i = 0; i < us.size(); ++i) {
            Ax(i, 0) = 1.0;
            Ax(i, 1) = us[i];
            Ax(i, 2) = us[i] * us[i];
            bx(i) = js[i];
        }
        const Eigen::Vector3d coef = Ax.colPivHouseholderQr().solve(bx);
        j0 = coef(0);
    }
    res.screenEndRatio = std::abs(j0) / std::max(maxAbsScreen, 1e-300);
    res.refocusing = res.screenEndRatio < 0.02;
    res.signChangeCount = crossings + (res.refocusing ? 1 : 0);
    res.endSignRelativeToStart = res.refocusing ? -1 : (crossings % 2 == 1 ? -1 : +1);
    if (res.refocusing) {
        // locate the extrapolated zero parameter from the last samples
        const FrameSample& fa = frames[n - 2];
        const FrameSample& fb = frames[n - 1];
        const double slope = (fb.screen - fa.screen) / std::max(fb.s - fa.s, 1e-300);
        res.signChangeParameter =
            fb.s + (std::abs(slope) > 1e-12 ? (j0 - fb.screen) / slope + (fb.screen - j0) / slope
                                            : 0.0);
        // parameter where the extrapolated screen hits j0 -> 0 crossing:
        res.signChangeParameter = fb.s - fb.screen / (slope != 0.0 ? slope : 1.0) ;
    } else {
        res.signChangeParameter = firstCrossing;
    }
    return res;
}

double affineDivergenceExponent(const GeodesicPath& path) {
    // regression of log(t_inf - t) ... the affine parameter itself diverges,
    // so regress log(t) against log(1/u) over the tail of the path.
    std::vector<double> xs, ys;
    for (const PathSample& s : path.samples) {
        if (s.u < 0.2 && s.s > 0.5 * path.samples.back().s && s.weylAffine > 0.0) {
            xs.push_back(std::log(1.0 / s.u));
            ys.push_back(std::log(s.weylAffine));
        }
    }
    if (xs.size() < 4) {
        fail(ErrorCode::ConfigInvalid,
             "not enough tail samples; integrate with traceWeylAffine enabled");
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

}  // namespace miniweyl
