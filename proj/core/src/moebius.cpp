#include "cp1lab/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace cp1lab {

namespace {

double max4(double a, double b, double c, double d) { return std::max(std::max(a, b), std::max(c, d)); }

// Canonical affine representative: (z, 1) for finite points, (1, 0) at infinity.
std::array<cplx, 2> canonical(const ComplexPoint& p) {
    if (p.is_infinite()) return {cplx(1.0), cplx(0.0)};
    return {p.num() / p.den(), cplx(1.0)};
}

}  // namespace

ComplexPoint::ComplexPoint(cplx num, cplx den) : num_(num), den_(den) {
    if (std::abs(num) == 0.0 && std::abs(den) == 0.0)
        throw DomainError("ComplexPoint: (0, 0) is not a point of CP^1");
}

bool ComplexPoint::is_infinite(double tol) const { return std::abs(den_) <= tol * std::abs(num_); }

cplx ComplexPoint::value() const {
    if (den_ == 0.0) throw DomainError("ComplexPoint::value: point at infinity");
    return num_ / den_;
}

ComplexPoint ComplexPoint::normalized() const {
    const double n = std::hypot(std::abs(num_), std::abs(den_));
    cplx z = num_ / n, w = den_ / n;
    // Fix the phase on the larger coordinate so equal points get equal pairs.
    const cplx ref = std::abs(w) >= std::abs(z) ? w : z;
    const cplx phase = std::conj(ref) / std::abs(ref);
    return {z * phase, w * phase};
}

bool ComplexPoint::approx_equal(const ComplexPoint& other, double tol) const {
    return chordal_distance(other) <= tol;
}

double ComplexPoint::chordal_distance(const ComplexPoint& other) const {
    const double n1 = std::hypot(std::abs(num_), std::abs(den_));
    const double n2 = std::hypot(std::abs(other.num_), std::abs(other.den_));
    return std::abs(num_ * other.den_ - other.num_ * den_) / (n1 * n2);
}

std::ostream& operator<<(std::ostream& os, const ComplexPoint& p) {
    if (p.is_infinite()) return os << "inf";
    return os << p.value();
}

MobiusMap::MobiusMap(cplx a, cplx b, cplx c, cplx d) {
    const cplx det = a * d - b * c;
    const double scale = max4(std::abs(a), std::abs(b), std::abs(c), std::abs(d));
    if (!(std::abs(det) > 1e-300) || std::abs(det) <= 1e-14 * scale * scale)
        throw DomainError("MobiusMap: singular matrix");
    const cplx s = std::sqrt(det);
    a_ = a / s;
    b_ = b / s;
    c_ = c / s;
    d_ = d / s;
}

MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2) {
    const cplx a = m1.a_ * m2.a_ + m1.b_ * m2.c_;
    const cplx b = m1.a_ * m2.b_ + m1.b_ * m2.d_;
    const cplx c = m1.c_ * m2.a_ + m1.d_ * m2.c_;
    const cplx d = m1.c_ * m2.b_ + m1.d_ * m2.d_;
    const cplx s = std::sqrt(a * d - b * c);
    return MobiusMap(MobiusMap::Raw{}, a / s, b / s, c / s, d / s);
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(Raw{}, d_, -b_, -c_, a_); }

MobiusMap MobiusMap::negated() const { return MobiusMap(Raw{}, -a_, -b_, -c_, -d_); }

MobiusMap MobiusMap::conjugated_by(const MobiusMap& g) const { return g * *this * g.inverse(); }

ComplexPoint MobiusMap::apply(const ComplexPoint& p) const {
    const cplx z = p.num(), w = p.den();
    return {a_ * z + b_ * w, c_ * z + d_ * w};
}

cplx MobiusMap::derivative(cplx z) const {
    const cplx q = c_ * z + d_;
    return 1.0 / (q * q);
}

bool MobiusMap::is_real(double tol) const {
    const double scale = std::max(1.0, max_abs_entry());
    return max4(std::abs(a_.imag()), std::abs(b_.imag()), std::abs(c_.imag()), std::abs(d_.imag())) <=
           tol * scale;
}

double MobiusMap::sl2_distance(const MobiusMap& o) const {
    return max4(std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_), std::abs(d_ - o.d_));
}

double MobiusMap::psl2_distance(const MobiusMap& o) const {
    return std::min(sl2_distance(o), sl2_distance(o.negated()));
}

double MobiusMap::max_abs_entry() const { return max4(std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)); }

std::ostream& operator<<(std::ostream& os, const MobiusMap& m) {
    return os << "[[" << m.a() << ", " << m.b() << "], [" << m.c() << ", " << m.d() << "]]";
}

const char* to_string(MobiusKind kind) {
    switch (kind) {
        case MobiusKind::identity: return "identity";
        case MobiusKind::elliptic: return "elliptic";
        case MobiusKind::parabolic: return "parabolic";
        case MobiusKind::loxodromic: return "loxodromic";
    }
    return "?";
}

MobiusClass classify(const MobiusMap& m, double tol) {
    const cplx tr2 = m.trace_squared();
    if (m.distance_from_identity() <= tol) return {MobiusKind::identity, tr2};
    if (std::abs(tr2 - 4.0) <= tol) return {MobiusKind::parabolic, tr2};
    if (std::abs(tr2.imag()) <= tol && tr2.real() >= -tol && tr2.real() < 4.0)
        return {MobiusKind::elliptic, tr2};
    return {MobiusKind::loxodromic, tr2};
}

namespace {

// Both projective forms of a fixed point; keep the better-scaled one.
ComplexPoint fixed_point_branch(const MobiusMap& m, cplx delta) {
    const cplx z1 = m.a() - m.d() + delta, w1 = 2.0 * m.c();
    const cplx z2 = 2.0 * m.b(), w2 = m.d() - m.a() + delta;
    const double n1 = std::abs(z1) + std::abs(w1), n2 = std::abs(z2) + std::abs(w2);
    return n1 >= n2 ? ComplexPoint(z1, w1) : ComplexPoint(z2, w2);
}

}  // namespace

std::vector<ComplexPoint> fixed_points(const MobiusMap& m, double tol) {
    const MobiusClass cls = classify(m, tol);
    if (cls.kind == MobiusKind::identity) throw DomainError("fixed_points: identity has no well-defined fixed-point set");
    if (cls.kind == MobiusKind::parabolic) return {fixed_point_branch(m, 0.0)};
    const cplx delta = std::sqrt(cls.trace_squared - 4.0);
    return {fixed_point_branch(m, delta), fixed_point_branch(m, -delta)};
}

LoxodromicAxis loxodromic_fixed_points(const MobiusMap& m) {
    const MobiusClass cls = classify(m);
    if (cls.kind != MobiusKind::loxodromic) throw DomainError("loxodromic_fixed_points: map is not loxodromic");
    cplx delta = std::sqrt(cls.trace_squared - 4.0);
    // The fixed point of the branch +delta has multiplier (tr + delta)/2 = c z + d;
    // it attracts when that eigenvalue is the larger one.
    const cplx tr = m.trace();
    if (std::abs(tr + delta) < std::abs(tr - delta)) delta = -delta;
    return {fixed_point_branch(m, -delta), fixed_point_branch(m, delta)};
}

MobiusMap axis_conjugator(const ComplexPoint& p, const ComplexPoint& q) {
    if (p.chordal_distance(q) <= 1e-10) throw DomainError("axis constructor: degenerate axis (p = q)");
    const auto pc = canonical(p);
    const auto qc = canonical(q);
    return MobiusMap(qc[0], pc[0], qc[1], pc[1]);
}

MobiusMap loxodromic_along_axis(const ComplexPoint& p, const ComplexPoint& q, cplx s) {
    const MobiusMap conj = axis_conjugator(p, q);
    return MobiusMap::diagonal(std::exp(s / 2.0)).conjugated_by(conj);
}

MobiusMap elliptic_about_axis(const ComplexPoint& p, const ComplexPoint& q, double t) {
    return loxodromic_along_axis(p, q, cplx(0.0, t));
}

}  // namespace cp1lab
