#include "miniweyl/desitter.hpp"

#include <cmath>

#include "miniweyl/errors.hpp"

namespace miniweyl {

DiskParam DiskParam::fromMatrix(cplx a, cplx b, cplx c, cplx d) {
    const cplx det = a * d - b * c;
    if (std::abs(det) < 1e-300) fail(ErrorCode::SingularMetric, "disk parameter is singular");
    const cplx s = std::sqrt(det);
    return {a / s, b / s, c / s, d / s};
}

DiskParam DiskParam::operator*(const DiskParam& r) const {
    return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
}

double DiskParam::frobeniusNorm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

DiskParam diskAutomorphism(cplx alpha, cplx beta) {
    const double n = std::norm(alpha) - std::norm(beta);
    if (!(n > 0.0)) {
        fail(ErrorCode::ConfigInvalid, "disk automorphism needs |alpha| > |beta|");
    }
    const double s = std::sqrt(n);
    return {alpha / s, beta / s, std::conj(beta) / s, std::conj(alpha) / s};
}

DiskParam diskAutomorphismFor(cplx zeta0, double phi) {
    if (std::abs(zeta0) >= 1.0) {
        fail(ErrorCode::ConfigInvalid, "disk automorphism center must be interior");
    }
    const cplx half = std::polar(1.0, phi / 2.0);
    return diskAutomorphism(half, -half * zeta0);
}

std::pair<SpherePoint, SpherePoint> desitterDisk(const DiskParam& A, cplx zeta) {
    const SpherePoint first =
        SpherePoint::fromHomogeneous(A.a * zeta + A.b, A.c * zeta + A.d);
    const SpherePoint second = SpherePoint::fromHomogeneous(
        -std::conj(A.d) * zeta - std::conj(A.c), std::conj(A.b) * zeta + std::conj(A.a));
    return {first, second};
}

BoundaryGraphReport boundaryOnGraphResidual(const DiskParam& A, std::size_t samples) {
    BoundaryGraphReport rep;
    const double n = A.frobeniusNorm();
    rep.conditionNumber = n * n;
    for (std::size_t k = 0; k < samples; ++k) {
        const cplx zeta = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) /
                                              static_cast<double>(samples));
        const auto [first, second] = desitterDisk(A, zeta);
        rep.residual = std::max(rep.residual, chordalDistance(second, antipodal(first)));
    }
    return rep;
}

namespace {

Eigen::Matrix2cd toMatrix(const DiskParam& A) {
    Eigen::Matrix2cd m;
    m << A.a, A.b, A.c, A.d;
    return m;
}

DiskParam fromEigen(const Eigen::Matrix2cd& m) {
    return DiskParam{m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

// sigma(X) = K conj(X) K with K = (0 1; 1 0); SU(1,1) is its fixed group.
Eigen::Matrix2cd sigmaInvolution(const Eigen::Matrix2cd& m) {
    Eigen::Matrix2cd k;
    k << 0.0, 1.0, 1.0, 0.0;
    return k * m.conjugate() * k;
}

}  // namespace

DeSitterModuliPoint gaugeReduce(const DiskParam& A) {
    const Eigen::Matrix2cd M = toMatrix(A);
    const Eigen::Matrix2cd Q = M * sigmaInvolution(M).inverse();
    const double trQ = Q.trace().real();  // imaginary part vanishes identically

    // Square-root section S with S sigma(S)^{-1} = Q.  The direct branch
    // S = (Q + I)/sqrt(tr Q + 2) degenerates as tr Q -> -2, so the other
    // half of the trace range goes through the J-translate of the coset.
    Eigen::Matrix2cd S;
    if (trQ >= 0.0) {
        S = (Q + Eigen::Matrix2cd::Identity()) / std::sqrt(trQ + 2.0);
    } else {
        Eigen::Matrix2cd J;
        J << 0.0, 1.0, -1.0, 0.0;
        const Eigen::Matrix2cd Qp = J * Q * J;  // trace -tr Q
        const Eigen::Matrix2cd R = (Qp + Eigen::Matrix2cd::Identity()) / std::sqrt(2.0 - trQ);
        S = J * R;
    }
    DeSitterModuliPoint out;
    out.representative = fromEigen(S);
    out.gaugeTag = fromEigen(S.inverse() * M);
    out.invariant = Q;
    return out;
}

std::shared_ptr<const WeylChartStructure> compactifiedDeSitter(double delta) {
    return std::make_shared<DeSitterStructure>(delta);
}

}  // namespace miniweyl
