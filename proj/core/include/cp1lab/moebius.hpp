#pragma once

// Moebius transformations as determinant-one complex 2x2 matrices acting on
// the Riemann sphere. Points of the sphere are carried in projective
// coordinates so that infinity needs no special-case arithmetic.

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

#include "cp1lab/error.hpp"

namespace cp1lab {

using cplx = std::complex<double>;

/// A point of CP^1 stored as a projective pair (num : den), not both zero.
class ComplexPoint {
public:
    ComplexPoint() : num_(0.0), den_(1.0) {}
    ComplexPoint(cplx num, cplx den);

    static ComplexPoint finite(cplx z) { return {z, 1.0}; }
    static ComplexPoint infinity() { return {1.0, 0.0}; }

    cplx num() const { return num_; }
    cplx den() const { return den_; }

    bool is_infinite(double tol = 1e-14) const;
    /// Affine value num/den; throws for the point at infinity.
    cplx value() const;

    /// |z1 w2 - z2 w1| <= tol * |p1| |p2| on unit-normalized pairs.
    bool approx_equal(const ComplexPoint& other, double tol = 1e-9) const;

    /// Representative with |num|^2 + |den|^2 = 1 and a fixed phase.
    ComplexPoint normalized() const;

    /// Chordal distance on the unit sphere, in [0, 1].
    double chordal_distance(const ComplexPoint& other) const;

private:
    cplx num_;
    cplx den_;
};

std::ostream& operator<<(std::ostream& os, const ComplexPoint& p);

/// z -> (a z + b) / (c z + d) with a d - b c = 1.
class MobiusMap {
public:
    /// Identity.
    MobiusMap() : a_(1.0), b_(0.0), c_(0.0), d_(1.0) {}

    /// Scales the entries by 1/sqrt(det); throws if the matrix is singular.
    MobiusMap(cplx a, cplx b, cplx c, cplx d);

    static MobiusMap identity() { return {}; }
    static MobiusMap diagonal(cplx lambda) { return {lambda, 0.0, 0.0, 1.0 / lambda}; }

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }

    cplx det() const { return a_ * d_ - b_ * c_; }
    cplx trace() const { return a_ + d_; }
    cplx trace_squared() const { return trace() * trace(); }

    MobiusMap inverse() const;
    MobiusMap negated() const;
    MobiusMap conjugated_by(const MobiusMap& g) const;  // g m g^-1

    ComplexPoint apply(const ComplexPoint& p) const;
    ComplexPoint apply(cplx z) const { return apply(ComplexPoint::finite(z)); }
    /// Derivative of the action at a finite point: 1/(cz+d)^2.
    cplx derivative(cplx z) const;

    bool is_real(double tol = 1e-12) const;

    /// Max-entry distance as SL2 matrices.
    double sl2_distance(const MobiusMap& other) const;
    /// min(|M - N|, |M + N|): distance in PSL2.
    double psl2_distance(const MobiusMap& other) const;
    /// Distance of the PSL2 class from the identity.
    double distance_from_identity() const { return psl2_distance(MobiusMap{}); }

    double max_abs_entry() const;

private:
    struct Raw {};
    MobiusMap(Raw, cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {}
    friend MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2);

    cplx a_, b_, c_, d_;
};

/// Matrix product m1 * m2 (apply m2 first), renormalized to determinant 1.
MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2);
inline MobiusMap operator*(const MobiusMap& m1, const MobiusMap& m2) { return compose(m1, m2); }

inline ComplexPoint apply(const MobiusMap& m, const ComplexPoint& p) { return m.apply(p); }

std::ostream& operator<<(std::ostream& os, const MobiusMap& m);

enum class MobiusKind { identity, elliptic, parabolic, loxodromic };

const char* to_string(MobiusKind kind);

struct MobiusClass {
    MobiusKind kind;
    cplx trace_squared;
};

inline constexpr double kClassifyTol = 1e-9;

/// Identity test first (either SL2 lift), then |tr^2 - 4|, then real tr^2 in [0, 4).
MobiusClass classify(const MobiusMap& m, double tol = kClassifyTol);

/// Roots of c z^2 + (d - a) z - b = 0, projectively. Two points unless parabolic.
std::vector<ComplexPoint> fixed_points(const MobiusMap& m, double tol = kClassifyTol);

/// Attracting and repelling fixed points of a loxodromic map.
struct LoxodromicAxis {
    ComplexPoint repelling;
    ComplexPoint attracting;
};
LoxodromicAxis loxodromic_fixed_points(const MobiusMap& m);

/// The map sending 0 -> p, infinity -> q and 1 -> the midpoint of the
/// canonical representatives of p and q.
MobiusMap axis_conjugator(const ComplexPoint& p, const ComplexPoint& q);

/// C diag(e^{it/2}, e^{-it/2}) C^-1 with C = axis_conjugator(p, q).
MobiusMap elliptic_about_axis(const ComplexPoint& p, const ComplexPoint& q, double t);

/// C diag(e^{s/2}, e^{-s/2}) C^-1; s = i t gives elliptic_about_axis.
MobiusMap loxodromic_along_axis(const ComplexPoint& p, const ComplexPoint& q, cplx s);

}  // namespace cp1lab
