#include "miniweyl/kahler.hpp"

#include <cmath>

#include "miniweyl/errors.hpp"

namespace miniweyl {

double roundAreaDensity(cplx w) {
    const double r2 = std::norm(w);
    const double s = 1.0 + r2;
    return 4.0 / (s * s);
}

double roundAreaDensity(const SpherePoint& p, int chart) {
    return roundAreaDensity(p.affine(chart));
}

double KahlerData::totalMass() const {
    const SphereQuadrature quad(quadNMu, quadNPhi);
    double mass = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
        mass += quad.weights[i] * conformalFactor(quad.points[i]);
    }
    return mass;
}

KahlerData pullbackAreaData(const SphereDiffeo& psi, std::size_t nMu, std::size_t nPhi) {
    KahlerData data;
    data.quadNMu = nMu;
    data.quadNPhi = nPhi;
    data.conformalFactor = [psi](const SpherePoint& p) {
        const ChartJacobian J = psi.jacobian(p);
        const SpherePoint q = psi.eval(p);
        const double density = -J.det() * roundAreaDensity(q, J.chartOut) /
                               roundAreaDensity(p, J.chartIn);
        if (!(density > 0.0)) {
            fail(ErrorCode::NonPositiveDensity,
                 "pulled-back area density is not positive; map is not "
                 "orientation-reversing at this sample");
        }
        return density;
    };
    return data;
}

namespace detail {

double graphSymplecticResidual(const std::function<SpherePoint(const SpherePoint&)>& eval,
                               const std::function<ChartJacobian(const SpherePoint&)>& jac,
                               const std::function<double(const SpherePoint&)>& density,
                               const SpherePoint& p) {
    const ChartJacobian J = jac(p);
    const SpherePoint q = eval(p);
    // omega evaluated on ((e1, J e1), (e2, J e2)) for the chart basis e1, e2:
    // omega_1(e1,e2) + det(J) * omega_2(J-image chart basis).
    const double omega1 = density(p) * roundAreaDensity(p, J.chartIn);
    const double omega2 = J.det() * roundAreaDensity(q, J.chartOut);
    return std::abs(omega1 + omega2);
}

}  // namespace detail

double lagrangianResidual(const SphereDiffeo& psi, const SpherePoint& p) {
    const KahlerData data = pullbackAreaData(psi);
    return detail::graphSymplecticResidual(
        [&](const SpherePoint& x) { return psi.eval(x); },
        [&](const SpherePoint& x) { return psi.jacobian(x); }, data.conformalFactor, p);
}

}  // namespace miniweyl
