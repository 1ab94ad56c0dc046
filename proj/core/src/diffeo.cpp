#include "miniweyl/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "miniweyl/errors.hpp"
#include "miniweyl/ode.hpp"

namespace miniweyl {

namespace {

constexpr int kMaxHarmonicDegree = 4;
constexpr double kMaxFlowAmplitude = 0.3;
constexpr double kFdStep = 1e-6;

// Coefficients of d^m/dz^m P_l(z), highest degree l - m.
std::vector<double> legendreDerivCoeffs(int l, int m) {
    std::vector<double> p0{1.0}, p1{0.0, 1.0};  // P_0, P_1
    if (l == 0) p1 = p0;
    for (int k = 2; k <= l; ++k) {
        std::vector<double> pk(static_cast<std::size_t>(k) + 1, 0.0);
        for (std::size_t i = 0; i < p1.size(); ++i)
            pk[i + 1] += (2.0 * k - 1.0) / k * p1[i];
        for (std::size_t i = 0; i < p0.size(); ++i)
            pk[i] -= (k - 1.0) / k * p0[i];
        p0 = std::move(p1);
        p1 = std::move(pk);
    }
    std::vector<double> q = (l == 0) ? p0 : p1;
    for (int d = 0; d < m; ++d) {
        std::vector<double> dq(q.size() > 1 ? q.size() - 1 : 1, 0.0);
        for (std::size_t i = 1; i < q.size(); ++i) dq[i - 1] = q[i] * static_cast<double>(i);
        q = std::move(dq);
    }
    return q;
}

double polyEval(const std::vector<double>& c, double z, double* deriv = nullptr) {
    double v = 0.0, d = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        d = d * z + v;
        v = v * z + c[i];
    }
    if (deriv) *deriv = d;
    return v;
}

double factorialRatio(int lo, int hi) {  // hi! / lo!
    double r = 1.0;
    for (int k = lo + 1; k <= hi; ++k) r *= k;
    return r;
}

// Cartesian gradient of the real spherical harmonic extension
// N * Q_lm(z) * Re/Im[(x+iy)^m]; restriction to S^2 is orthonormal Y_lm.
Vec3 harmonicCartesianGradient(int l, int m, const Vec3& n) {
    const int ma = std::abs(m);
    const bool sinBranch = m < 0;
    const std::vector<double> q = legendreDerivCoeffs(l, ma);
    double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) / factorialRatio(l - ma, l + ma));
    if (ma > 0) norm *= std::sqrt(2.0);

    double dq = 0.0;
    const double qv = polyEval(q, n.z(), &dq);
    const cplx xy(n.x(), n.y());
    if (ma == 0) return Vec3(0.0, 0.0, norm * dq);

    cplx pw(1.0, 0.0);  // (x+iy)^(m-1)
    for (int k = 1; k < ma; ++k) pw *= xy;
    const cplx pm = pw * xy;
    const double trig = sinBranch ? pm.imag() : pm.real();
    const double tx = sinBranch ? ma * pw.imag() : ma * pw.real();
    const double ty = sinBranch ? ma * pw.real() : -ma * pw.imag();
    return norm * Vec3(qv * tx, qv * ty, dq * trig);
}

}  // namespace

Vec3 harmonicField(std::span<const Harmonic> harmonics, const Vec3& n) {
    Vec3 field = Vec3::Zero();
    for (const Harmonic& h : harmonics) {
        if (h.coef == 0.0) continue;
        const Vec3 grad = harmonicCartesianGradient(h.degree, h.order, n);
        const Vec3 tangential = grad - grad.dot(n) * n;
        field += h.coef * (h.kind == Harmonic::Kind::Gradient ? tangential
                                                              : Vec3(n.cross(tangential)));
    }
    return field;
}

SpherePoint flowHarmonics(std::span<const Harmonic> harmonics, double time,
                          const SpherePoint& p) {
    if (time == 0.0 || harmonics.empty()) return p;
    std::vector<double> y{p.unitVec().x(), p.unitVec().y(), p.unitVec().z()};
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    opt.hInit = 0.1;
    opt.maxSteps = 20000;
    opt.projector = [](double, std::vector<double>& v) {
        const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        v[0] /= r; v[1] /= r; v[2] /= r;
    };
    auto rhs = [&](double, const std::vector<double>& v, std::vector<double>& dv) {
        const Vec3 f = harmonicField(harmonics, Vec3(v[0], v[1], v[2]).normalized());
        dv[0] = f.x(); dv[1] = f.y(); dv[2] = f.z();
    };
    try {
        integrateOde(rhs, y, 0.0, time, opt);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::StepBudgetExceeded)
            fail(ErrorCode::FlowDivergence, "harmonic flow exceeded its step budget");
        throw;
    }
    return SpherePoint::fromUnitVec(Vec3(y[0], y[1], y[2]));
}

struct AntipodalNode {};
struct MobiusNode {
    MobiusMap pre, post;
    std::shared_ptr<const SphereDiffeo::Node> base;
};
struct FlowNode {
    std::shared_ptr<const SphereDiffeo::Node> base;
    std::vector<Harmonic> harmonics;
    double flowTime = 0.0;
};
struct InvertedNode {
    std::shared_ptr<const SphereDiffeo::Node> base;
};

struct SphereDiffeo::Node {
    std::variant<AntipodalNode, MobiusNode, FlowNode, InvertedNode> v;
};

namespace {

using Node = SphereDiffeo::Node;

SpherePoint newtonInverse(const Node& node, const SpherePoint& q);

SpherePoint evalNode(const Node& node, const SpherePoint& p) {
    if (std::holds_alternative<AntipodalNode>(node.v)) return antipodal(p);
    if (const auto* m = std::get_if<MobiusNode>(&node.v)) {
        return m->post.apply(evalNode(*m->base, m->pre.apply(p)));
    }
    if (const auto* inv = std::get_if<InvertedNode>(&node.v)) {
        return newtonInverse(*inv->base, p);
    }
    const auto& f = std::get<FlowNode>(node.v);
    return flowHarmonics(f.harmonics, f.flowTime, evalNode(*f.base, p));
}

struct Jet {
    SpherePoint q;
    int chartOut = 0;
    cplx P{0.0, 0.0}, Q{0.0, 0.0};
};

Jet composeJet(const Jet& first, const Jet& second) {
    Jet out;
    out.q = second.q;
    out.chartOut = second.chartOut;
    out.P = second.P * first.P + second.Q * std::conj(first.Q);
    out.Q = second.P * first.Q + second.Q * std::conj(first.P);
    return out;
}

Jet antipodalJet(const SpherePoint& p, int chartIn) {
    Jet jet;
    jet.q = antipodal(p);
    jet.chartOut = jet.q.activeChart();
    if (chartIn == jet.chartOut) {
        const cplx x = p.affine(chartIn);
        if (std::abs(x) < 1e-8) fail(ErrorCode::ChartPole, "antipodal jet at chart pole");
        jet.Q = 1.0 / std::conj(x * x);
    } else {
        jet.Q = -1.0;
    }
    return jet;
}

Jet mobiusJet(const MobiusMap& m, const SpherePoint& p, int chartIn) {
    Jet jet;
    jet.q = m.apply(p);
    jet.chartOut = jet.q.activeChart();
    jet.P = m.chartDerivative(p, chartIn, jet.chartOut);
    return jet;
}

Jet flowJet(const FlowNode& f, const SpherePoint& p, int chartIn) {
    Jet jet;
    jet.q = flowHarmonics(f.harmonics, f.flowTime, p);
    jet.chartOut = jet.q.activeChart();
    if (f.flowTime == 0.0 || f.harmonics.empty()) {
        jet.P = (chartIn == jet.chartOut) ? cplx(1.0, 0.0)
                                          : -1.0 / std::pow(p.affine(chartIn), 2);
        return jet;
    }
    const cplx w = p.affine(chartIn);
    auto image = [&](cplx dw) {
        return flowHarmonics(f.harmonics, f.flowTime, SpherePoint::fromAffine(w + dw, chartIn))
            .affine(jet.chartOut);
    };
    const cplx fx = (image(cplx(kFdStep, 0)) - image(cplx(-kFdStep, 0))) / (2.0 * kFdStep);
    const cplx fy = (image(cplx(0, kFdStep)) - image(cplx(0, -kFdStep))) / (2.0 * kFdStep);
    jet.P = 0.5 * (fx - cplx(0, 1) * fy);
    jet.Q = 0.5 * (fx + cplx(0, 1) * fy);
    return jet;
}

Jet evalJet(const Node& node, const SpherePoint& p, int chartIn) {
    if (std::holds_alternative<AntipodalNode>(node.v)) return antipodalJet(p, chartIn);
    if (const auto* m = std::get_if<MobiusNode>(&node.v)) {
        Jet jet = mobiusJet(m->pre, p, chartIn);
        jet = composeJet(jet, evalJet(*m->base, jet.q, jet.chartOut));
        return composeJet(jet, mobiusJet(m->post, jet.q, jet.chartOut));
    }
    if (const auto* inv = std::get_if<InvertedNode>(&node.v)) {
        // d(f^{-1}) at p is the inverse Wirtinger pair of df at f^{-1}(p).
        Jet jet;
        jet.q = newtonInverse(*inv->base, p);
        jet.chartOut = jet.q.activeChart();
        const Jet fwd = evalJet(*inv->base, jet.q, jet.chartOut);
        // invert dw -> P dw + Q conj(dw): determinant |P|^2 - |Q|^2
        const double det = std::norm(fwd.P) - std::norm(fwd.Q);
        if (std::abs(det) < 1e-14) {
            fail(ErrorCode::SingularMetric, "inverse jet at a critical point");
        }
        Jet inverse;
        inverse.q = jet.q;
        inverse.chartOut = jet.chartOut;
        inverse.P = std::conj(fwd.P) / det;
        inverse.Q = -fwd.Q / det;
        if (fwd.chartOut != chartIn) {
            // pre-compose with the chart transition at p
            Jet pre;
            pre.q = p;
            pre.chartOut = fwd.chartOut;
            const cplx win = p.affine(chartIn);
            if (std::abs(win) < 1e-8) fail(ErrorCode::ChartPole, "inverse jet at chart pole");
            pre.P = -1.0 / (win * win);
            return composeJet(pre, inverse);
        }
        return inverse;
    }
    const auto& f = std::get<FlowNode>(node.v);
    Jet jet = evalJet(*f.base, p, chartIn);
    return composeJet(jet, flowJet(f, jet.q, jet.chartOut));
}

SpherePoint structuralInverse(const Node& node, const SpherePoint& q) {
    if (std::holds_alternative<AntipodalNode>(node.v)) return antipodal(q);
    if (const auto* m = std::get_if<MobiusNode>(&node.v)) {
        return m->pre.inverse().apply(
            structuralInverse(*m->base, m->post.inverse().apply(q)));
    }
    if (const auto* inv = std::get_if<InvertedNode>(&node.v)) {
        return evalNode(*inv->base, q);
    }
    const auto& f = std::get<FlowNode>(node.v);
    return structuralInverse(*f.base, flowHarmonics(f.harmonics, -f.flowTime, q));
}

SpherePoint newtonInverse(const Node& node, const SpherePoint& q) {
    SpherePoint x = structuralInverse(node, q);
    const int cq = q.activeChart();
    const cplx target = q.affine(cq);
    for (int iter = 0; iter < 25; ++iter) {
        const SpherePoint fx = evalNode(node, x);
        const cplx r = fx.affine(cq) - target;
        if (std::abs(r) < 1e-13) return x;
        const int cx = x.activeChart();
        Jet jet = evalJet(node, x, cx);
        if (jet.chartOut != cq) {
            const cplx w = jet.q.affine(jet.chartOut);
            Jet transition;
            transition.q = jet.q;
            transition.chartOut = cq;
            transition.P = -1.0 / (w * w);
            jet = composeJet(jet, transition);
        }
        const Eigen::Matrix2d J = realMatrixFromWirtinger(jet.P, jet.Q);
        const Eigen::Vector2d delta = J.partialPivLu().solve(Eigen::Vector2d(r.real(), r.imag()));
        x = SpherePoint::fromAffine(x.affine(cx) - cplx(delta.x(), delta.y()), cx);
    }
    if (chordalDistance(evalNode(node, x), q) > 1e-10) {
        fail(ErrorCode::NewtonStall, "diffeo inverse did not converge");
    }
    return x;
}

}  // namespace

SphereDiffeo SphereDiffeo::antipodalMap() {
    return SphereDiffeo(std::make_shared<Node>(Node{AntipodalNode{}}));
}

SphereDiffeo SphereDiffeo::mobiusConjugated(const MobiusMap& pre, const MobiusMap& post,
                                            SphereDiffeo base) {
    return SphereDiffeo(std::make_shared<Node>(Node{MobiusNode{pre, post, base.node_}}));
}

SphereDiffeo SphereDiffeo::flowPerturbed(SphereDiffeo base, std::vector<Harmonic> harmonics,
                                         double flowTime) {
    for (const Harmonic& h : harmonics) {
        if (h.degree < 1 || h.degree > kMaxHarmonicDegree || std::abs(h.order) > h.degree) {
            fail(ErrorCode::ConfigInvalid, "harmonic degree/order out of range (degree <= 4)");
        }
        if (std::abs(h.coef * flowTime) > kMaxFlowAmplitude) {
            fail(ErrorCode::ConfigInvalid, "|coefficient| * flowTime exceeds the 0.3 cap");
        }
    }
    return SphereDiffeo(
        std::make_shared<Node>(Node{FlowNode{base.node_, std::move(harmonics), flowTime}}));
}

SphereDiffeo SphereDiffeo::inverted(SphereDiffeo base) {
    if (const auto* inv = std::get_if<InvertedNode>(&base.node_->v)) {
        return SphereDiffeo(inv->base);  // double inversion cancels
    }
    return SphereDiffeo(std::make_shared<Node>(Node{InvertedNode{base.node_}}));
}

SpherePoint SphereDiffeo::eval(const SpherePoint& p) const { return evalNode(*node_, p); }

ChartJacobian SphereDiffeo::jacobian(const SpherePoint& p) const {
    return jacobian(p, p.activeChart(), eval(p).activeChart());
}

ChartJacobian SphereDiffeo::jacobian(const SpherePoint& p, int chartIn, int chartOut) const {
    Jet jet = evalJet(*node_, p, chartIn);
    if (jet.chartOut != chartOut) {
        const cplx w = jet.q.affine(jet.chartOut);
        if (std::abs(w) < 1e-8) {
            fail(ErrorCode::ChartPole, "requested output chart has its pole at the image point");
        }
        Jet transition;
        transition.q = jet.q;
        transition.chartOut = chartOut;
        transition.P = -1.0 / (w * w);
        jet = composeJet(jet, transition);
    }
    ChartJacobian out;
    out.chartIn = chartIn;
    out.chartOut = chartOut;
    out.matrix = realMatrixFromWirtinger(jet.P, jet.Q);
    return out;
}

SpherePoint SphereDiffeo::inverse(const SpherePoint& q) const {
    return newtonInverse(*node_, q);
}

bool SphereDiffeo::isAntipodal() const {
    return std::holds_alternative<AntipodalNode>(node_->v);
}

namespace {

std::vector<SpherePoint> fibonacciSphere(std::size_t n) {
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

std::vector<SpherePoint> anchorSet(std::size_t n) {
    // Spread points, rotated off the coordinate axes to avoid symmetric
    // degeneracies with the test maps.
    std::vector<SpherePoint> base = fibonacciSphere(n);
    const MobiusMap rot = MobiusMap::rotation(Vec3(0.3, 0.2, 0.93).normalized(), 0.41);
    for (auto& p : base) p = rot.apply(p);
    return base;
}

double supDistanceAfterPostFit(const std::vector<SpherePoint>& from,
                               const std::vector<SpherePoint>& to, const MobiusMap& fit) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        worst = std::max(worst, chordalDistance(fit.apply(from[i]), to[i]));
    }
    return worst;
}

}  // namespace

double diffeoGaugeDistance(const SphereDiffeo& psi1, const SphereDiffeo& psi2,
                           const GaugeDistanceOptions& opt) {
    const std::vector<SpherePoint> grid = fibonacciSphere(opt.sampleCount);
    const std::vector<SpherePoint> anchors = anchorSet(opt.anchorPoints);

    std::vector<SpherePoint> v1(grid.size()), v2(grid.size()), dom(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v1[i] = psi1.eval(grid[i]);
        v2[i] = psi2.eval(grid[i]);
        dom[i] = psi2.inverse(v1[i]);  // (psi2^{-1} . psi1)(x)
    }

    double best = opt.supCap;
    std::size_t degenerate = 0, tried = 0;
    const std::size_t n = anchors.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                ++tried;
                const std::array<SpherePoint, 3> a{anchors[i], anchors[j], anchors[k]};
                try {
                    // Post gauge: psi1 ~ phi . psi2, anchored on the range side.
                    std::array<SpherePoint, 3> im2, im1;
                    for (int t = 0; t < 3; ++t) {
                        im2[t] = psi2.eval(a[t]);
                        im1[t] = psi1.eval(a[t]);
                    }
                    const MobiusMap post = MobiusMap::fromThreePoints(im2, im1);
                    best = std::min(best, supDistanceAfterPostFit(v2, v1, post));

                    // Pre gauge: psi1 ~ psi2 . phi, measured on the domain side.
                    std::array<SpherePoint, 3> b;
                    for (int t = 0; t < 3; ++t) b[t] = psi2.inverse(im1[t]);
                    const MobiusMap pre = MobiusMap::fromThreePoints(a, b);
                    best = std::min(best, supDistanceAfterPostFit(grid, dom, pre));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::DegenerateAnchors) throw;
                    ++degenerate;
                }
            }
        }
    }
    if (degenerate == tried) {
        fail(ErrorCode::DegenerateAnchors, "all anchor triples were degenerate");
    }
    return best;
}

double gaugeDistanceToSamples(const SphereDiffeo& psi,
                              std::span<const std::pair<SpherePoint, SpherePoint>> samples) {
    if (samples.size() < 4) {
        fail(ErrorCode::ConfigInvalid, "need at least four samples for a gauge fit");
    }
    std::vector<SpherePoint> x, y, px, invy;
    for (const auto& [a, b] : samples) {
        x.push_back(a);
        y.push_back(b);
        px.push_back(psi.eval(a));
        invy.push_back(psi.inverse(b));
    }
    double best = 10.0;
    std::size_t degenerate = 0, tried = 0;
    const std::size_t n = std::min<std::size_t>(samples.size(), 8);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                ++tried;
                try {
                    const MobiusMap post = MobiusMap::fromThreePoints(
                        {px[i], px[j], px[k]}, {y[i], y[j], y[k]});
                    best = std::min(best, supDistanceAfterPostFit(px, y, post));
                    const MobiusMap pre = MobiusMap::fromThreePoints(
                        {x[i], x[j], x[k]}, {invy[i], invy[j], invy[k]});
                    best = std::min(best, supDistanceAfterPostFit(x, invy, pre));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::DegenerateAnchors) throw;
                    ++degenerate;
                }
            }
        }
    }
    if (degenerate == tried) {
        fail(ErrorCode::DegenerateAnchors, "all sample anchor triples were degenerate");
    }
    return best;
}

}  // namespace miniweyl
