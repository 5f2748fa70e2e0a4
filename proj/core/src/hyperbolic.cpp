#include "cp1lab/hyperbolic.hpp"

#include <cmath>
#include <numbers>

namespace cp1lab {

namespace {

std::array<double, 2> real_canonical(const ComplexPoint& p) {
    if (p.is_infinite(1e-300)) return {1.0, 0.0};
    return {(p.num() / p.den()).real(), 1.0};
}

}  // namespace

MobiusMap disk_to_half_plane() { return MobiusMap(cplx(0, 1), cplx(0, 1), -1.0, 1.0); }

MobiusMap half_plane_to_disk() { return disk_to_half_plane().inverse(); }

double cosh_distance(cplx z, cplx w) {
    return 1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag());
}

double hyperbolic_distance(cplx z, cplx w) { return std::acosh(cosh_distance(z, w)); }

BoundaryGeodesic geodesic_through(cplx x, cplx y) {
    const double scale = 1.0 + std::abs(x) + std::abs(y);
    if (std::abs(x.real() - y.real()) <= 1e-14 * scale) {
        const auto foot = ComplexPoint::finite(0.5 * (x.real() + y.real()));
        if (y.imag() >= x.imag()) return {foot, ComplexPoint::infinity()};
        return {ComplexPoint::infinity(), foot};
    }
    const double c0 = (std::norm(x) - std::norm(y)) / (2.0 * (x.real() - y.real()));
    const double r = std::abs(x - c0);
    const double thx = std::arg(x - c0), thy = std::arg(y - c0);
    const auto right = ComplexPoint::finite(c0 + r), left = ComplexPoint::finite(c0 - r);
    if (thx < thy) return {right, left};
    return {left, right};
}

MobiusMap geodesic_normalizer(const ComplexPoint& from, const ComplexPoint& to) {
    const auto p = real_canonical(from);
    const auto q = real_canonical(to);
    // z -> (p1' z - p0') / (q1' z - q0') sends from -> 0 and to -> infinity.
    double a = p[1], b = -p[0], c = q[1], d = -q[0];
    if (a * d - b * c < 0.0) {
        a = -a;
        b = -b;
    }
    return MobiusMap(a, b, c, d);
}

double side_of_geodesic(const ComplexPoint& p, const ComplexPoint& q, cplx z) {
    const ComplexPoint image = geodesic_normalizer(p, q).apply(z);
    if (image.is_infinite(1e-300)) return 0.0;
    const cplx v = image.value();
    return v.real() / std::abs(v);
}

GeodesicSegment::GeodesicSegment(cplx x, cplx y) : x_(x), y_(y), length_(0.0) {
    if (x == y) return;
    const BoundaryGeodesic g = geodesic_through(x, y);
    to_axis_ = geodesic_normalizer(g.from, g.to);
    from_axis_ = to_axis_.inverse();
    const double yx = to_axis_.apply(x).value().imag();
    const double yy = to_axis_.apply(y).value().imag();
    log_start_ = std::log(yx);
    length_ = std::log(yy) - log_start_;
}

cplx GeodesicSegment::at(double s) const {
    if (length_ == 0.0) return x_;
    if (s <= 0.0) return x_;
    if (s >= 1.0) return y_;
    const cplx on_axis(0.0, std::exp(log_start_ + s * length_));
    return from_axis_.apply(on_axis).value();
}

cplx GeodesicSegment::velocity(double s) const {
    if (length_ == 0.0) return 0.0;
    const cplx on_axis(0.0, std::exp(log_start_ + s * length_));
    return from_axis_.derivative(on_axis) * on_axis * length_;
}

SpacePoint apply(const MobiusMap& m, const SpacePoint& p) {
    const cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const cplx cwd = c * p.w + d;
    const double h2 = p.h * p.h;
    const double den = std::norm(cwd) + std::norm(c) * h2;
    const cplx num = (a * p.w + b) * std::conj(cwd) + a * std::conj(c) * h2;
    return {num / den, p.h / den};
}

std::array<double, 4> to_hyperboloid(const SpacePoint& p) {
    const double x = p.w.real(), y = p.w.imag(), h = p.h;
    const double s = x * x + y * y + h * h;
    return {(s + 1.0) / (2.0 * h), x / h, y / h, (s - 1.0) / (2.0 * h)};
}

double lorentz_dot(const std::array<double, 4>& u, const std::array<double, 4>& v) {
    return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

namespace {

double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

}  // namespace

std::array<double, 4> plane_normal(const SpacePoint& p1, const SpacePoint& p2, const SpacePoint& p3) {
    const auto u = to_hyperboloid(p1), v = to_hyperboloid(p2), w = to_hyperboloid(p3);
    // Euclidean generalized cross product: c . x = det[x; u; v; w].
    std::array<double, 4> c{};
    c[0] = det3(u[1], u[2], u[3], v[1], v[2], v[3], w[1], w[2], w[3]);
    c[1] = -det3(u[0], u[2], u[3], v[0], v[2], v[3], w[0], w[2], w[3]);
    c[2] = det3(u[0], u[1], u[3], v[0], v[1], v[3], w[0], w[1], w[3]);
    c[3] = -det3(u[0], u[1], u[2], v[0], v[1], v[2], w[0], w[1], w[2]);
    // Lorentz-orthogonal vector is J c with J = diag(-1, 1, 1, 1).
    std::array<double, 4> n{-c[0], c[1], c[2], c[3]};
    const double nn = lorentz_dot(n, n);
    if (!(nn > 0.0)) throw NumericalError("plane_normal: points are collinear or degenerate");
    const double s = 1.0 / std::sqrt(nn);
    for (double& x : n) x *= s;
    return n;
}

double distance_to_plane(const std::array<double, 4>& n, const SpacePoint& p) {
    return std::asinh(std::abs(lorentz_dot(n, to_hyperboloid(p))));
}

double angle_between_normals(const std::array<double, 4>& n1, const std::array<double, 4>& n2) {
    double c = lorentz_dot(n1, n2);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

double hyperbolic_distance(const SpacePoint& p, const SpacePoint& q) {
    const double num = std::norm(p.w - q.w) + (p.h - q.h) * (p.h - q.h);
    return std::acosh(1.0 + num / (2.0 * p.h * q.h));
}

}  // namespace cp1lab
