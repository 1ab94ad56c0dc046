#include "miniweyl/sphere.hpp"

#include <cmath>

#include "miniweyl/errors.hpp"

namespace miniweyl {

const char* errorCodeName(ErrorCode code) {
    switch (code) {
        case ErrorCode::FlowDivergence: return "FlowDivergence";
        case ErrorCode::ChartPole: return "ChartPole";
        case ErrorCode::NewtonStall: return "NewtonStall";
        case ErrorCode::DegenerateAnchors: return "DegenerateAnchors";
        case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
        case ErrorCode::SingularMetric: return "SingularMetric";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
        case ErrorCode::TrappedGeodesic: return "TrappedGeodesic";
        case ErrorCode::MultipleSignChanges: return "MultipleSignChanges";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::StepCollapse: return "StepCollapse";
        case ErrorCode::NonIntegral: return "NonIntegral";
        case ErrorCode::DerivativeZero: return "DerivativeZero";
        case ErrorCode::ConeFitFailure: return "ConeFitFailure";
        case ErrorCode::AmbiguousZeros: return "AmbiguousZeros";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::IoFailure: return "IoFailure";
    }
    return "UnknownError";
}

SpherePoint SpherePoint::fromHomogeneous(cplx z0, cplx z1) {
    const double n = std::sqrt(std::norm(z0) + std::norm(z1));
    if (!(n > 0.0) || !std::isfinite(n)) {
        fail(ErrorCode::SingularMetric, "homogeneous coordinates must be finite and nonzero");
    }
    return SpherePoint(z0 / n, z1 / n);
}

SpherePoint SpherePoint::fromAffine(cplx w, int chart) {
    if (chart == 0) return fromHomogeneous(w, 1.0);
    return fromHomogeneous(1.0, w);
}

SpherePoint SpherePoint::fromUnitVec(const Vec3& n) {
    // z0 conj(z1) = (n1 + i n2)/2, |z0|^2 - |z1|^2 = n3.
    const Vec3 u = n.normalized();
    if (u.z() <= 0.0) {
        const double z1 = std::sqrt(0.5 * (1.0 - u.z()));
        return fromHomogeneous(cplx(u.x(), u.y()) / (2.0 * z1), z1);
    }
    const double z0 = std::sqrt(0.5 * (1.0 + u.z()));
    return fromHomogeneous(z0, cplx(u.x(), -u.y()) / (2.0 * z0));
}

int SpherePoint::activeChart() const {
    return std::norm(z1_) >= std::norm(z0_) ? 0 : 1;
}

cplx SpherePoint::affine(int chart) const {
    return chart == 0 ? z0_ / z1_ : z1_ / z0_;
}

Vec3 SpherePoint::unitVec() const {
    const cplx cross = z0_ * std::conj(z1_);
    return Vec3(2.0 * cross.real(), 2.0 * cross.imag(), std::norm(z0_) - std::norm(z1_));
}

double chordalDistance(const SpherePoint& p, const SpherePoint& q) {
    return 2.0 * std::abs(p.z0() * q.z1() - p.z1() * q.z0());
}

SpherePoint antipodal(const SpherePoint& p) {
    return SpherePoint::fromHomogeneous(-std::conj(p.z1()), std::conj(p.z0()));
}

MobiusMap MobiusMap::fromMatrix(cplx a, cplx b, cplx c, cplx d) {
    const cplx det = a * d - b * c;
    if (std::abs(det) < 1e-300) {
        fail(ErrorCode::SingularMetric, "Mobius matrix is singular");
    }
    const cplx s = std::sqrt(det);
    return MobiusMap(a / s, b / s, c / s, d / s);
}

namespace {

// Matrix sending (p0, p1, p2) to ([0:1], [1:1], [1:0]); the rows are built
// from 2x2 minors of the homogeneous coordinates.
void threePointRows(const std::array<SpherePoint, 3>& p, cplx out[4]) {
    const cplx a0 = p[0].z0(), b0 = p[0].z1();
    const cplx a1 = p[1].z0(), b1 = p[1].z1();
    const cplx a2 = p[2].z0(), b2 = p[2].z1();
    const cplx c0 = b2 * a1 - a2 * b1;  // scale so the middle point maps to [1:1]
    const cplx c2 = b0 * a1 - a0 * b1;
    out[0] = c0 * b0;
    out[1] = -c0 * a0;
    out[2] = c2 * b2;
    out[3] = -c2 * a2;
}

}  // namespace

MobiusMap MobiusMap::fromThreePoints(const std::array<SpherePoint, 3>& p,
                                     const std::array<SpherePoint, 3>& q) {
    constexpr double kMinSeparation = 1e-6;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (chordalDistance(p[i], p[j]) < kMinSeparation ||
                chordalDistance(q[i], q[j]) < kMinSeparation) {
                fail(ErrorCode::DegenerateAnchors, "anchor points nearly coincident");
            }
        }
    }
    cplx S[4], T[4];
    threePointRows(p, S);
    threePointRows(q, T);
    // m = T^{-1} S (both normalized to send the triple to the same frame).
    const cplx detT = T[0] * T[3] - T[1] * T[2];
    if (std::abs(detT) < 1e-14) {
        fail(ErrorCode::DegenerateAnchors, "target anchor triple is degenerate");
    }
    const cplx a = T[3] * S[0] - T[1] * S[2];
    const cplx b = T[3] * S[1] - T[1] * S[3];
    const cplx c = -T[2] * S[0] + T[0] * S[2];
    const cplx d = -T[2] * S[1] + T[0] * S[3];
    return fromMatrix(a, b, c, d);
}

MobiusMap MobiusMap::rotation(const Vec3& axis, double angle) {
    const Vec3 u = axis.normalized();
    const double ch = std::cos(0.5 * angle);
    const double sh = std::sin(0.5 * angle);
    // SU(2) element cos(t/2) I + i sin(t/2) (u . sigma); the projective
    // action on [z0 : z1] rotates the unit vector picture by `angle`.
    const cplx a(ch, sh * u.z());
    const cplx b(sh * u.y(), sh * u.x());
    const cplx c(-sh * u.y(), sh * u.x());
    const cplx d(ch, -sh * u.z());
    return fromMatrix(a, b, c, d);
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

MobiusMap MobiusMap::operator*(const MobiusMap& rhs) const {
    return MobiusMap(a_ * rhs.a_ + b_ * rhs.c_, a_ * rhs.b_ + b_ * rhs.d_,
                     c_ * rhs.a_ + d_ * rhs.c_, c_ * rhs.b_ + d_ * rhs.d_);
}

SpherePoint MobiusMap::apply(const SpherePoint& p) const {
    return SpherePoint::fromHomogeneous(a_ * p.z0() + b_ * p.z1(),
                                        c_ * p.z0() + d_ * p.z1());
}

cplx MobiusMap::chartDerivative(const SpherePoint& p, int chartIn, int chartOut) const {
    // Compose with the chart transition w -> 1/w on either side as needed,
    // then differentiate (aw+b)/(cw+d): f'(w) = det/(cw+d)^2.
    cplx a = a_, b = b_, c = c_, d = d_;
    if (chartIn == 1) {  // substitute w -> 1/v: matrix columns swap
        std::swap(a, b);
        std::swap(c, d);
    }
    if (chartOut == 1) {  // post-compose with 1/(.): rows swap
        std::swap(a, c);
        std::swap(b, d);
    }
    const cplx w = p.affine(chartIn);
    const cplx den = c * w + d;
    if (std::abs(den) < 1e-12) {
        fail(ErrorCode::ChartPole, "Mobius chart derivative at a pole of the chart expression");
    }
    const cplx det = a * d - b * c;
    return det / (den * den);
}

double MobiusMap::frobeniusNorm() const {
    return std::sqrt(std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_));
}

cplx ChartJacobian::holomorphicPart() const {
    return 0.5 * cplx(matrix(0, 0) + matrix(1, 1), matrix(1, 0) - matrix(0, 1));
}

cplx ChartJacobian::antiholomorphicPart() const {
    return 0.5 * cplx(matrix(0, 0) - matrix(1, 1), matrix(1, 0) + matrix(0, 1));
}

Eigen::Matrix2d realMatrixFromWirtinger(cplx P, cplx Q) {
    Eigen::Matrix2d m;
    m << P.real() + Q.real(), -P.imag() + Q.imag(),
         P.imag() + Q.imag(),  P.real() - Q.real();
    return m;
}

}  // namespace miniweyl
