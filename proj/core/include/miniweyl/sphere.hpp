#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace miniweyl {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;

/// Point of the Riemann sphere in homogeneous coordinates [z0 : z1],
/// normalized so |z0|^2 + |z1|^2 = 1.  Two affine charts are used:
/// chart 0 with coordinate w = z0/z1 (valid where |z1| >= |z0|, i.e.
/// |w| <= 1) and chart 1 with coordinate v = z1/z0 = 1/w.  The chart with
/// the larger-modulus denominator is "active"; its coordinate always has
/// modulus <= 1.
class SpherePoint {
public:
    SpherePoint() : z0_(0.0, 0.0), z1_(1.0, 0.0) {}

    static SpherePoint fromHomogeneous(cplx z0, cplx z1);
    /// Chart 0: point with w = z0/z1 = w; chart 1: point with z1/z0 = w.
    static SpherePoint fromAffine(cplx w, int chart = 0);
    static SpherePoint infinity() { return fromHomogeneous(1.0, 0.0); }
    /// Unit vector on S^2 in R^3; w = 0 is the south pole (0,0,-1).
    static SpherePoint fromUnitVec(const Vec3& n);

    cplx z0() const { return z0_; }
    cplx z1() const { return z1_; }

    int activeChart() const;
    /// Affine coordinate in the given chart.  Unbounded near that chart's
    /// pole; finite and of modulus <= 1 in the active chart.
    cplx affine(int chart) const;
    Vec3 unitVec() const;

private:
    SpherePoint(cplx z0, cplx z1) : z0_(z0), z1_(z1) {}
    cplx z0_, z1_;
};

/// Chordal distance in R^3 between unit-sphere representatives,
/// d = 2 |z0 w1 - z1 w0| for normalized homogeneous coordinates.
/// Ranges over [0, 2]; 2 iff antipodal.
double chordalDistance(const SpherePoint& p, const SpherePoint& q);

/// The antipodal map [z0 : z1] -> [-conj(z1) : conj(z0)]; in chart 0 this
/// is w -> -1/conj(w).  Involutive and fixed-point free.
SpherePoint antipodal(const SpherePoint& p);

/// Element of PSL(2,C) stored as an SL(2,C) matrix (a b; c d), det = 1.
class MobiusMap {
public:
    MobiusMap() : a_(1), b_(0), c_(0), d_(1) {}

    /// Normalizes the determinant to 1 (divides by a square root of
    /// ad - bc).  Throws SingularMetric if the matrix is singular.
    static MobiusMap fromMatrix(cplx a, cplx b, cplx c, cplx d);
    static MobiusMap identity() { return MobiusMap(); }
    /// The unique Mobius map sending p[i] to q[i], i = 0,1,2.
    /// Throws DegenerateAnchors if either triple is nearly coincident.
    static MobiusMap fromThreePoints(const std::array<SpherePoint, 3>& p,
                                     const std::array<SpherePoint, 3>& q);
    /// Rotation of S^2 about the axis through `axis` by `angle`, as the
    /// corresponding SU(2) matrix.
    static MobiusMap rotation(const Vec3& axis, double angle);

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }

    MobiusMap inverse() const;
    /// Composition: (m1 * m2)(p) = m1(m2(p)).
    MobiusMap operator*(const MobiusMap& rhs) const;

    SpherePoint apply(const SpherePoint& p) const;

    /// Complex derivative of the chart expression of the map taking the
    /// chartIn coordinate at p to the chartOut coordinate at apply(p).
    cplx chartDerivative(const SpherePoint& p, int chartIn, int chartOut) const;

    double frobeniusNorm() const;

private:
    MobiusMap(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {}
    cplx a_, b_, c_, d_;
};

/// Real 2x2 chart Jacobian of a sphere map together with the charts it is
/// expressed in.  Column j holds the image of the j-th chart basis vector.
struct ChartJacobian {
    Eigen::Matrix2d matrix = Eigen::Matrix2d::Zero();
    int chartIn = 0;
    int chartOut = 0;

    double det() const { return matrix.determinant(); }
    /// Wirtinger pair (P, Q): the R-linear map is dw -> P dw + Q conj(dw).
    cplx holomorphicPart() const;
    cplx antiholomorphicPart() const;
};

/// Builds the real 2x2 matrix of dw -> P dw + Q conj(dw).
Eigen::Matrix2d realMatrixFromWirtinger(cplx P, cplx Q);

}  // namespace miniweyl
