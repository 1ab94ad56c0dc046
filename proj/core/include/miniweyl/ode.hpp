#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "miniweyl/errors.hpp"

namespace miniweyl {

// Adaptive embedded Dormand-Prince 5(4) with the standard order-4
// continuous extension.  State is a flat vector of doubles; the right-hand
// side is f(t, y, dydt).

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double hInit = 1e-3;
    double hMin = 1e-14;
    double hMax = 0.0;  // 0 = span/4
    std::size_t maxSteps = 400000;
    // Applied to the state after every accepted step (constraint projection).
    std::function<void(double, std::vector<double>&)> projector;
    // Called after each accepted step; return true to request a stop.
    std::function<bool(double, const std::vector<double>&)> watcher;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

class DenseStep {
public:
    // Evaluate the order-4 interpolant at fraction theta in [0,1] of the step.
    void eval(double theta, std::vector<double>& y) const {
        const std::size_t n = r1.size();
        y.resize(n);
        const double th1 = 1.0 - theta;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = r1[i] + theta * (r2[i] + th1 * (r3[i] + theta * (r4[i] + th1 * r5[i])));
        }
    }
    double t0 = 0.0, h = 0.0;
    std::vector<double> r1, r2, r3, r4, r5;
};

namespace dp54 {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights (Hairer-Norsett-Wanner DOPRI5).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;
}  // namespace dp54

/// Integrates y' = f(t, y) from t0 to t1 (t1 may be < t0).  The optional
/// per-step callback receives dense-output data for event location.
template <class Rhs>
OdeStats integrateOde(Rhs&& f, std::vector<double>& y, double t0, double t1,
                      const OdeOptions& opt = {},
                      const std::function<bool(const DenseStep&, double&)>& stepEvent = {}) {
    using namespace dp54;
    const std::size_t n = y.size();
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    if (span == 0.0) return {};
    const double hmax = (opt.hMax > 0.0) ? opt.hMax : span / 4.0;

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    std::vector<double> ytmp(n), ynew(n);
    OdeStats stats;
    double t = t0;
    double h = std::min(std::abs(opt.hInit), hmax);
    f(t, y, k1);

    while (dir * (t1 - t) > 0.0) {
        if (stats.accepted + stats.rejected > opt.maxSteps) {
            fail(ErrorCode::StepBudgetExceeded, "ODE step budget exhausted");
        }
        h = std::min(h, std::abs(t1 - t));
        const double hs = dir * h;

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + hs * a21 * k1[i];
        f(t + c2 * hs, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        f(t + c3 * hs, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + c4 * hs, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + c5 * hs, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + hs, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + hs, ynew, k7);

        double errNorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sk = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double q = e / sk;
            errNorm += q * q;
        }
        errNorm = std::sqrt(errNorm / static_cast<double>(n));

        if (errNorm <= 1.0) {
            ++stats.accepted;
            if (stepEvent) {
                DenseStep ds;
                ds.t0 = t;
                ds.h = hs;
                ds.r1.resize(n); ds.r2.resize(n); ds.r3.resize(n); ds.r4.resize(n); ds.r5.resize(n);
                for (std::size_t i = 0; i < n; ++i) {
                    const double dy = ynew[i] - y[i];
                    ds.r1[i] = y[i];
                    ds.r2[i] = dy;
                    ds.r3[i] = hs * k1[i] - dy;
                    ds.r4[i] = dy - hs * k7[i] - ds.r3[i];
                    ds.r5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                     d6 * k6[i] + d7 * k7[i]);
                }
                double tStop = t + hs;
                if (stepEvent(ds, tStop)) {
                    const double theta = (tStop - t) / hs;
                    ds.eval(std::clamp(theta, 0.0, 1.0), y);
                    if (opt.projector) opt.projector(tStop, y);
                    return stats;
                }
            }
            t += hs;
            y.swap(ynew);
            if (opt.projector) opt.projector(t, y);
            f(t, y, k1);  // FSAL does not survive projection; re-evaluate
            if (opt.watcher && opt.watcher(t, y)) return stats;
            const double fac = std::clamp(0.9 * std::pow(std::max(errNorm, 1e-10), -0.2), 0.2, 5.0);
            h = std::min(h * fac, hmax);
        } else {
            ++stats.rejected;
            const double fac = std::clamp(0.9 * std::pow(errNorm, -0.2), 0.1, 1.0);
            h *= fac;
            if (h < opt.hMin) {
                fail(ErrorCode::StepBudgetExceeded, "ODE step size underflow");
            }
        }
    }
    return stats;
}

}  // namespace miniweyl
