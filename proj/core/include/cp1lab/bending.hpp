#pragma once

// Bending deformations of the Fuchsian representation along the catalog
// curves: the algebraic (amalgam / HNN) construction, the bending cocycle,
// the pleated plane, and the Thurston metric area formulas.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "cp1lab/fuchsian.hpp"
#include "cp1lab/holonomy.hpp"
#include "cp1lab/hyperbolic.hpp"

namespace cp1lab {

struct BendSpec {
    CurveSpec curve;
    /// Complex shear-bend parameter: real part = shift length, imaginary part = bending angle.
    cplx s{0.0, 0.0};

    static BendSpec bending(const std::string& curve, double t) { return {find_curve(curve), cplx(0.0, t)}; }
};

/// Amalgam formula for the separating curve [a1, b1]: a1, b1 fixed and a2, b2
/// conjugated by A = exp(s) along the axis of rho0([a1, b1]). The subsurface
/// carrying a2, b2 lies to the right of that axis (oriented from the repelling
/// to the attracting fixed point); A is the bending that rotates it.
Representation bend_amalgam(const MarkedGroup& g, const BendSpec& spec);

/// HNN formula for the nonseparating curve a1: the stable letter b1 becomes
/// rho0(b1) A with A = exp(s) along the axis of rho0(a1).
Representation bend_hnn(const MarkedGroup& g, const BendSpec& spec);

/// Dispatches on the separating flag.
Representation bend_algebraic(const MarkedGroup& g, const BendSpec& spec);

struct BendCocycleResult {
    MobiusMap value;
    int lifts_used = 0;
    bool stable = false;
};

/// Lift tables for cocycle evaluation of one curve (shared, immutable).
class BendingCocycle {
public:
    BendingCocycle(const MarkedGroup& g, const CurveSpec& curve, int cutoff = 4);

    /// Ordered product of elliptics E(lift, t) over the lifts separating x from
    /// y, each lift oriented with y on its right. Stability compares against
    /// the value at cutoff + 2.
    BendCocycleResult operator()(double t, cplx x, cplx y) const;

    int cutoff() const { return cutoff_; }
    const CurveSpec& curve() const { return curve_; }
    const MarkedGroup& group() const { return group_; }
    const LiftSet& lifts() const { return *lifts_; }

private:
    MobiusMap product(double t, cplx x, cplx y, int len, int* count) const;
    MarkedGroup group_;
    CurveSpec curve_;
    int cutoff_;
    std::shared_ptr<const LiftSet> lifts_;
};

BendCocycleResult bending_cocycle(const MarkedGroup& g, const CurveSpec& curve, double t, cplx x, cplx y,
                                  int cutoff = 4);

/// A basepoint near the octagon center that lies off every lift of the
/// catalog curves (the center itself lies on the axis of a1).
cplx default_bending_basepoint();

/// rho(gamma) = B(O, gamma O) rho0(gamma). Throws if a cocycle value is unstable.
Representation bend_from_cocycle(const BendingCocycle& cocycle, double t, cplx basepoint);
Representation bend_from_cocycle(const MarkedGroup& g, const CurveSpec& curve, double t, cplx basepoint,
                                 int cutoff = 4);

/// Pl(x) = B(O, x) x in upper half-space.
SpacePoint pleating_point(const BendingCocycle& cocycle, double t, cplx basepoint, cplx x);

struct PleatingCheck {
    double coplanarity = 0.0;  // max distance of extra plaque points to the fitted plane
    double dihedral = 0.0;     // angle between the two plaque planes
    double t = 0.0;
};

/// Samples points in two plaques adjacent along the first lift crossed by the
/// segment from the basepoint towards `towards`, fits planes through three
/// points of each and measures the remaining points and the dihedral angle.
PleatingCheck pleating_check(const BendingCocycle& cocycle, double t, cplx basepoint, cplx towards);

/// Thurston metric area of the grafted surface Gr_{t gamma} X: 4 pi (g - 1) + t ell.
double grafted_area(int genus, double t, double ell);
/// Total curvature of the Thurston metric: -4 pi (g - 1).
double total_curvature_mass(int genus);

struct CylinderDecomposition {
    double hyperbolic_area = 0.0;  // area of the hyperbolic part
    double euclidean_area = 0.0;   // area of the inserted flat cylinder
};

/// Area of the hyperbolic part by quadrature of the Bolza octagon (genus 2 only)
/// and the flat cylinder of height t and circumference ell.
CylinderDecomposition bolza_cylinder_decomposition(double t, double ell);

/// Bolza systole 2 arccosh(1 + sqrt 2).
double bolza_systole();

struct BendReport {
    std::string curve;
    double t = 0.0;
    Character character;
    double periodicity_residual = 0.0;  // character(t) vs character(t + 2 pi)
    double agreement_residual = 0.0;    // algebraic vs cocycle character
    double relator_defect = 0.0;
    bool stable = true;
};

BendReport bend_report(const MarkedGroup& g, const std::string& curve, double t, int cutoff = 4);

}  // namespace cp1lab
