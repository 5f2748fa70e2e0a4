#include "cp1lab/bending.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cp1lab/quadrature.hpp"

namespace cp1lab {

namespace {

bool is_bolza(const MarkedGroup& g) {
    static const MarkedGroup ref = bolza_group();
    for (int i = 0; i < kGenerators; ++i)
        if (g.gens[i].sl2_distance(ref.gens[i]) > 1e-13) return false;
    return true;
}

MobiusMap bend_along(const MarkedGroup& g, const Word& curve, cplx s) {
    const MobiusMap gamma = evaluate_word(g, curve);
    if (classify(gamma).kind != MobiusKind::loxodromic) throw DomainError("bend: curve must be loxodromic under rho0");
    const GeodesicAxis ax = axis_of(gamma);
    return loxodromic_along_axis(ax.from, ax.to, s);
}

// A point on the axis of m.
cplx axis_point(const MobiusMap& m) {
    const GeodesicAxis ax = axis_of(m);
    return geodesic_normalizer(ax.from, ax.to).inverse().apply(cplx(0.0, 1.0)).value();
}

}  // namespace

Representation bend_amalgam(const MarkedGroup& g, const BendSpec& spec) {
    if (!spec.curve.separating) throw DomainError("bend_amalgam: curve is nonseparating; use HNN variant");
    const MobiusMap a = bend_along(g, spec.curve.word, spec.s);
    const GeodesicAxis ax = axis_of(evaluate_word(g, spec.curve.word));
    // Orientation convention: the half carrying a2, b2 is rotated by A when it
    // lies to the right of the oriented axis, by A^-1 otherwise.
    const bool right = side_of_geodesic(ax.from, ax.to, axis_point(g.gens[2])) > 0.0;
    const MobiusMap conj = right ? a : a.inverse();
    std::array<MobiusMap, kGenerators> gens = g.gens;
    gens[2] = g.gens[2].conjugated_by(conj);
    gens[3] = g.gens[3].conjugated_by(conj);
    RepresentationOrigin origin{Provenance::bending, {spec.s}, spec.s.imag(), spec.curve.name};
    return Representation(gens, g.relator, origin);
}

Representation bend_hnn(const MarkedGroup& g, const BendSpec& spec) {
    if (spec.curve.separating) throw DomainError("bend_hnn: curve is separating; use the amalgam variant");
    if (!(spec.curve.word == Word{1}))
        throw DomainError("bend_hnn: only the catalog curve a1 (stable letter b1) is supported");
    const MobiusMap a = bend_along(g, spec.curve.word, spec.s);
    std::array<MobiusMap, kGenerators> gens = g.gens;
    gens[1] = g.gens[1] * a;
    RepresentationOrigin origin{Provenance::bending, {spec.s}, spec.s.imag(), spec.curve.name};
    return Representation(gens, g.relator, origin);
}

Representation bend_algebraic(const MarkedGroup& g, const BendSpec& spec) {
    return spec.curve.separating ? bend_amalgam(g, spec) : bend_hnn(g, spec);
}

BendingCocycle::BendingCocycle(const MarkedGroup& g, const CurveSpec& curve, int cutoff)
    : group_(g), curve_(curve), cutoff_(cutoff) {
    if (cutoff < 0) throw DomainError("bending_cocycle: cutoff must be >= 0");
    auto table = is_bolza(g) ? bolza_elements(cutoff + 2)
                             : std::make_shared<const ElementTable>(enumerate_elements(g, cutoff + 2));
    lifts_ = std::make_shared<const LiftSet>(g, std::move(table), curve.word, cutoff + 2);
}

MobiusMap BendingCocycle::product(double t, cplx x, cplx y, int len, int* count) const {
    const auto lifts = lifts_->separating(x, y, len);
    MobiusMap m;
    for (const auto& l : lifts) m = m * elliptic_about_axis(l.axis.from, l.axis.to, t);
    if (count) *count = static_cast<int>(lifts.size());
    return m;
}

BendCocycleResult BendingCocycle::operator()(double t, cplx x, cplx y) const {
    BendCocycleResult r;
    r.value = product(t, x, y, cutoff_, &r.lifts_used);
    int more = 0;
    const MobiusMap check = product(t, x, y, cutoff_ + 2, &more);
    r.stable = more == r.lifts_used && check.psl2_distance(r.value) <= 1e-12;
    return r;
}

BendCocycleResult bending_cocycle(const MarkedGroup& g, const CurveSpec& curve, double t, cplx x, cplx y,
                                  int cutoff) {
    return BendingCocycle(g, curve, cutoff)(t, x, y);
}

cplx default_bending_basepoint() {
    // Disk point 0.05 + 0.03i in H coordinates.
    const cplx w(0.05, 0.03);
    return cplx(0.0, 1.0) * (1.0 + w) / (1.0 - w);
}

Representation bend_from_cocycle(const BendingCocycle& cocycle, double t, cplx basepoint) {
    const MarkedGroup& g = cocycle.group();
    std::array<MobiusMap, kGenerators> gens;
    for (int i = 0; i < kGenerators; ++i) {
        const cplx image = g.gens[i].apply(basepoint).value();
        const BendCocycleResult b = cocycle(t, basepoint, image);
        if (!b.stable) throw NumericalError("bend_from_cocycle: cocycle unstable at cutoff; raise cutoff");
        gens[i] = b.value * g.gens[i];
    }
    RepresentationOrigin origin{Provenance::bending, {cplx(0.0, t)}, t, cocycle.curve().name};
    return Representation(gens, g.relator, origin);
}

Representation bend_from_cocycle(const MarkedGroup& g, const CurveSpec& curve, double t, cplx basepoint, int cutoff) {
    return bend_from_cocycle(BendingCocycle(g, curve, cutoff), t, basepoint);
}

SpacePoint pleating_point(const BendingCocycle& cocycle, double t, cplx basepoint, cplx x) {
    const BendCocycleResult b = cocycle(t, basepoint, x);
    return apply(b.value, lift_to_space(x));
}

namespace {

// Orientation of the triangle (p, q, r) in the z-plane.
double orientation(cplx p, cplx q, cplx r) {
    const cplx u = q - p, v = r - p;
    return u.real() * v.imag() - u.imag() * v.real();
}

}  // namespace

PleatingCheck pleating_check(const BendingCocycle& cocycle, double t, cplx basepoint, cplx towards) {
    const auto lifts = cocycle.lifts().separating(basepoint, towards, cocycle.cutoff());
    if (lifts.empty()) throw DomainError("pleating_check: no lift between basepoint and target");
    const SeparatingLift& lift = lifts.front();
    const GeodesicSegment seg(basepoint, towards);
    const MobiusMap n = geodesic_normalizer(lift.axis.from, lift.axis.to);
    const MobiusMap n_inv = n.inverse();
    const double r0 = std::abs(n.apply(seg.at(lift.crossing)).value());

    // Sample points on both sides of the lift near the crossing; Re N(z) > 0
    // is the right side, which contains `towards`.
    const double us[5] = {-0.2, 0.0, 0.2, -0.1, 0.1};
    const double ds[5] = {0.04, 0.08, 0.04, 0.06, 0.05};
    PleatingCheck out;
    out.t = t;
    std::array<std::array<double, 4>, 2> normals;
    for (int side = 0; side < 2; ++side) {
        std::array<cplx, 5> pts;
        for (int k = 0; k < 5; ++k) {
            const double th = std::numbers::pi / 2.0 + (side == 0 ? ds[k] : -ds[k]);
            pts[k] = n_inv.apply(std::polar(r0 * std::exp(us[k]), th)).value();
        }
        if (orientation(pts[0], pts[1], pts[2]) < 0.0) std::swap(pts[1], pts[2]);
        std::array<SpacePoint, 5> img;
        for (int k = 0; k < 5; ++k) img[k] = pleating_point(cocycle, t, basepoint, pts[k]);
        normals[side] = plane_normal(img[0], img[1], img[2]);
        for (int k = 3; k < 5; ++k) out.coplanarity = std::max(out.coplanarity, distance_to_plane(normals[side], img[k]));
    }
    out.dihedral = angle_between_normals(normals[0], normals[1]);
    return out;
}

double grafted_area(int genus, double t, double ell) {
    if (genus < 2) throw DomainError("grafted_area: genus must be >= 2");
    if (t < 0.0 || !(ell > 0.0)) throw DomainError("grafted_area: need t >= 0 and ell > 0");
    return 4.0 * std::numbers::pi * (genus - 1) + t * ell;
}

double total_curvature_mass(int genus) {
    if (genus < 2) throw DomainError("total_curvature_mass: genus must be >= 2");
    return -4.0 * std::numbers::pi * (genus - 1);
}

CylinderDecomposition bolza_cylinder_decomposition(double t, double ell) {
    if (t < 0.0 || !(ell > 0.0)) throw DomainError("cylinder decomposition: need t >= 0 and ell > 0");
    // Hyperbolic area of the octagon: int 4 / (1 - r^2)^2 r dr dtheta.
    const GaussRule ang = gauss_legendre(48, -std::numbers::pi / 8.0, std::numbers::pi / 8.0);
    double area = 0.0;
    for (int sector = 0; sector < 8; ++sector)
        for (std::size_t ia = 0; ia < ang.nodes.size(); ++ia) {
            const double th = sector * std::numbers::pi / 4.0 + ang.nodes[ia];
            const GaussRule rad = gauss_legendre(96, 0.0, octagon_boundary_radius(th));
            for (std::size_t ir = 0; ir < rad.nodes.size(); ++ir) {
                const double r = rad.nodes[ir];
                area += ang.weights[ia] * rad.weights[ir] * 4.0 * r / ((1.0 - r * r) * (1.0 - r * r));
            }
        }
    return {area, t * ell};
}

double bolza_systole() { return 2.0 * std::acosh(1.0 + std::sqrt(2.0)); }

BendReport bend_report(const MarkedGroup& g, const std::string& curve, double t, int cutoff) {
    const CurveSpec& c = find_curve(curve);
    BendReport r;
    r.curve = c.name;
    r.t = t;
    const Representation alg = bend_algebraic(g, {c, cplx(0.0, t)});
    const Representation per = bend_algebraic(g, {c, cplx(0.0, t + 2.0 * std::numbers::pi)});
    r.character = character_of(alg);
    r.periodicity_residual = r.character.distance(character_of(per));
    const BendingCocycle cocycle(g, c, cutoff);
    try {
        const Representation coc = bend_from_cocycle(cocycle, t, default_bending_basepoint());
        r.agreement_residual = r.character.distance(character_of(coc));
        r.relator_defect = std::max(alg.relator_defect(), coc.relator_defect());
    } catch (const NumericalError&) {
        r.stable = false;
        r.agreement_residual = std::numeric_limits<double>::quiet_NaN();
        r.relator_defect = alg.relator_defect();
    }
    return r;
}

}  // namespace cp1lab
