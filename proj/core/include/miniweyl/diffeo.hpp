#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "miniweyl/sphere.hpp"

namespace miniweyl {

/// One term of a tangent vector field on S^2 built from a real spherical
/// harmonic Y_{lm}: either its sphere gradient or the rotated (area
/// preserving) field n x grad Y_{lm}.  Degree is capped at 4 and
/// |coef| * flowTime at 0.3 so that downstream disk images stay inside a
/// single chart.
struct Harmonic {
    int degree = 2;
    int order = 0;  // -degree..degree; negative orders are the sin(m phi) branch
    enum class Kind { Gradient, Rotational };
    Kind kind = Kind::Gradient;
    double coef = 0.0;
};

/// Evaluates the harmonic vector field sum at a unit vector (tangential).
Vec3 harmonicField(std::span<const Harmonic> harmonics, const Vec3& n);

/// Orientation-reversing diffeomorphism of the Riemann sphere, described
/// recursively: the antipodal map, a Mobius conjugate post . base . pre,
/// or a base map post-composed with the time-T flow of a harmonic field.
class SphereDiffeo {
public:
    SphereDiffeo() : SphereDiffeo(antipodalMap()) {}

    static SphereDiffeo antipodalMap();
    static SphereDiffeo mobiusConjugated(const MobiusMap& pre, const MobiusMap& post,
                                         SphereDiffeo base);
    static SphereDiffeo flowPerturbed(SphereDiffeo base, std::vector<Harmonic> harmonics,
                                      double flowTime);
    /// The inverse map as a first-class object (evaluation solves the base
    /// map; still orientation-reversing).
    static SphereDiffeo inverted(SphereDiffeo base);

    SpherePoint eval(const SpherePoint& p) const;

    /// Chart Jacobian in the active charts of p and eval(p); analytic for
    /// antipodal/Mobius layers, central finite differences (h = 1e-6) for
    /// flow layers.
    ChartJacobian jacobian(const SpherePoint& p) const;
    ChartJacobian jacobian(const SpherePoint& p, int chartIn, int chartOut) const;

    /// Point x with eval(x) = q, via the structural inverse followed by a
    /// Newton polish to 1e-12.  Throws NewtonStall if the polish fails.
    SpherePoint inverse(const SpherePoint& q) const;

    bool isAntipodal() const;

    struct Node;
    const Node& node() const { return *node_; }

private:
    explicit SphereDiffeo(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Time-T flow of the harmonic field starting from p (adaptive
/// Runge-Kutta on the embedded sphere; throws FlowDivergence if the step
/// budget is exhausted).
SpherePoint flowHarmonics(std::span<const Harmonic> harmonics, double time,
                          const SpherePoint& p);

struct GaugeDistanceOptions {
    std::size_t sampleCount = 192;   // sup-distance sample grid
    std::size_t anchorPoints = 6;    // anchors taken from a spread point set
    double supCap = 10.0;
};

/// Heuristic upper bound on the Mobius-gauge distance between psi1 and
/// psi2: over a grid of anchor triples, fit a post- (and separately a
/// pre-) composition Mobius map through the anchor images and take the
/// best sup chordal distance on the sample grid.  Zero (up to tolerance)
/// whenever the two maps are Mobius equivalent.
double diffeoGaugeDistance(const SphereDiffeo& psi1, const SphereDiffeo& psi2,
                           const GaugeDistanceOptions& opt = {});

/// Same heuristic against a sampled map given as (x, y) pairs; anchors
/// are drawn from the samples themselves.
double gaugeDistanceToSamples(const SphereDiffeo& psi,
                              std::span<const std::pair<SpherePoint, SpherePoint>> samples);

}  // namespace miniweyl
