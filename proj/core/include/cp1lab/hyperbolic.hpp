#pragma once

// Plane and space hyperbolic geometry: the upper half-plane H, the unit disk,
// and upper half-space H^3 (boundary C) with a hyperboloid-model bridge used
// for plane fitting.

#include <array>
#include <optional>

#include "cp1lab/moebius.hpp"

namespace cp1lab {

/// Cayley transform w -> i (1 + w) / (1 - w), disk -> H.
MobiusMap disk_to_half_plane();
/// Inverse Cayley transform z -> (z - i) / (z + i), H -> disk.
MobiusMap half_plane_to_disk();

double hyperbolic_distance(cplx z, cplx w);
/// cosh of the distance; cheaper and monotone.
double cosh_distance(cplx z, cplx w);

/// The complete geodesic of H through two distinct points, as boundary
/// endpoints ordered so that travelling from `from` to `to` meets x before y.
struct BoundaryGeodesic {
    ComplexPoint from;
    ComplexPoint to;
};
BoundaryGeodesic geodesic_through(cplx x, cplx y);

/// Real Moebius map (det > 0) sending from -> 0, to -> infinity.
MobiusMap geodesic_normalizer(const ComplexPoint& from, const ComplexPoint& to);

/// Signed side of z relative to the oriented geodesic from p to q on the
/// boundary of H: positive on the right, negative on the left. The value is
/// Re N(z) / |N(z)| with N = geodesic_normalizer(p, q), so |side| is a
/// Moebius-invariant angle-like quantity (0 on the geodesic).
double side_of_geodesic(const ComplexPoint& p, const ComplexPoint& q, cplx z);

/// Point at parameter s in [0, 1] (hyperbolic arclength fraction) on the
/// geodesic segment from x to y.
class GeodesicSegment {
public:
    GeodesicSegment(cplx x, cplx y);
    cplx at(double s) const;
    /// d/ds of at(s).
    cplx velocity(double s) const;
    double length() const { return length_; }
    cplx start() const { return x_; }
    cplx end() const { return y_; }

private:
    cplx x_, y_;
    double length_;
    MobiusMap to_axis_;    // sends the segment's geodesic to the imaginary axis
    MobiusMap from_axis_;
    double log_start_ = 0.0;
};

// ---------------------------------------------------------------- H^3

/// Point of upper half-space: boundary coordinate w in C, height h > 0.
struct SpacePoint {
    cplx w;
    double h;
};

/// Inclusion H -> H^3 onto the vertical half-plane over R.
inline SpacePoint lift_to_space(cplx z) { return {cplx(z.real(), 0.0), z.imag()}; }

/// Poincare extension of m to H^3.
SpacePoint apply(const MobiusMap& m, const SpacePoint& p);

/// Hyperboloid model coordinates (X0; X1, X2, X3) with -X0^2 + |X|^2 = -1.
std::array<double, 4> to_hyperboloid(const SpacePoint& p);

double lorentz_dot(const std::array<double, 4>& u, const std::array<double, 4>& v);

/// Unit spacelike normal of the totally geodesic plane through three points,
/// oriented by the order of the points.
std::array<double, 4> plane_normal(const SpacePoint& p1, const SpacePoint& p2, const SpacePoint& p3);

/// Hyperbolic distance from a point to the plane with unit normal n.
double distance_to_plane(const std::array<double, 4>& n, const SpacePoint& p);

/// Angle in [0, pi] between two oriented planes.
double angle_between_normals(const std::array<double, 4>& n1, const std::array<double, 4>& n2);

double hyperbolic_distance(const SpacePoint& p, const SpacePoint& q);

}  // namespace cp1lab
