#pragma once

// Schwarzian derivatives of analytic maps and transport of the Schwarzian
// equation u'' + (1/2) phi u = 0 along paths in H.

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cp1lab/moebius.hpp"

namespace cp1lab {

/// Value and first three derivatives of a holomorphic map at a point.
struct Jet3 {
    cplx f, f1, f2, f3;
};

class AnalyticMap1D {
public:
    using Evaluator = std::function<Jet3(cplx)>;

    AnalyticMap1D(std::string name, Evaluator jet);

    static AnalyticMap1D mobius(const MobiusMap& m);
    /// z -> exp(k z)
    static AnalyticMap1D exp(cplx k = 1.0);
    static AnalyticMap1D tan();
    /// z -> z^p on the principal branch.
    static AnalyticMap1D power(cplx p);
    /// f o g, derivatives by the chain rule.
    static AnalyticMap1D compose(const AnalyticMap1D& f, const AnalyticMap1D& g);
    /// Derivatives of a plain evaluator from the four-point ring z + h i^k.
    static AnalyticMap1D numeric(std::string name, std::function<cplx(cplx)> f);

    Jet3 jet(cplx z) const { return jet_(z); }
    cplx operator()(cplx z) const { return jet_(z).f; }
    const std::string& name() const { return name_; }

    /// |f'(z) - (f(z+h) - f(z-h)) / 2h| / (1 + |f'(z)|) with h = 1e-5 (1 + |z|).
    double derivative_consistency(cplx z) const;

private:
    std::string name_;
    Evaluator jet_;
};

/// Step used by the numeric family: 5e-3 (1 + |z|).
double numeric_step(cplx z);

/// S(f) = f'''/f' - (3/2) (f''/f')^2.
cplx schwarzian_at(const AnalyticMap1D& f, cplx z);
cplx schwarzian_of_jet(const Jet3& j);

/// |S(f o g)(z) - (S(f)(g z) g'(z)^2 + S(g)(z))|.
double cocycle_residual(const AnalyticMap1D& f, const AnalyticMap1D& g, cplx z);

// ------------------------------------------------------------------ paths

class PathInH {
public:
    enum class Kind { geodesic, straight };

    /// Hyperbolic geodesic segment; nodes at hyperbolic spacing <= spacing.
    static PathInH geodesic(cplx z0, cplx z1, double spacing = 0.1);
    /// Euclidean segment (used for closed-form checks).
    static PathInH straight(cplx z0, cplx z1, double spacing = 0.1);

    cplx point(double s) const;
    cplx velocity(double s) const;
    cplx start() const { return z0_; }
    cplx end() const { return z1_; }
    Kind kind() const { return kind_; }
    /// Parameters in [0, 1] of the subdivision nodes, including 0 and 1.
    const std::vector<double>& nodes() const { return nodes_; }
    /// Hyperbolic length.
    double length() const { return length_; }

private:
    PathInH() = default;
    Kind kind_ = Kind::straight;
    cplx z0_, z1_;
    std::vector<double> nodes_;
    double length_ = 0.0;
    // geodesic parametrization z(s) = M(i exp(a + s l))
    MobiusMap from_axis_;
    double log_start_ = 0.0, log_len_ = 0.0;
};

// -------------------------------------------------------------- transport

/// 2x2 complex matrix acting on solution data (u, u').
struct Mat2 {
    cplx m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;

    static Mat2 identity() { return {}; }
    cplx det() const { return m00 * m11 - m01 * m10; }
    Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11, m10 * o.m00 + m11 * o.m10,
                m10 * o.m01 + m11 * o.m11};
    }
    Mat2 operator+(const Mat2& o) const { return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11}; }
    Mat2 operator*(cplx s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
    Mat2 inverse() const {
        const cplx d = det();
        return {m11 / d, -m01 / d, -m10 / d, m00 / d};
    }
    Mat2 transposed() const { return {m00, m10, m01, m11}; }
    double max_abs() const;
    double distance(const Mat2& o) const;
};

struct TransportMatrix {
    Mat2 T;
    int steps = 0;
    int rejected = 0;
    double det_drift() const { return std::abs(T.det() - 1.0); }
};

struct TransportOptions {
    double tol = 1e-10;     // local error per unit parameter
    double min_step = 1e-12;
    int max_steps = 200000;
};

using PhiField = std::function<cplx(cplx)>;

/// Fundamental-solution transport of v' = [[0, 1], [-phi/2, 0]] v from the
/// start of the path to its end (adaptive Dormand-Prince 5(4)).
TransportMatrix transport(const PhiField& phi, const PathInH& path, const TransportOptions& opt = {});

/// Cross-check integrator for dM = M omega with the osculation form
/// omega = -(1/2) phi [[z, -z^2], [1, -z]] dz, started at M = [[0, 1], [1, -z0]].
Mat2 transport_osculating(const PhiField& phi, const PathInH& path, const TransportOptions& opt = {});

/// The matrix N(z) = [[0, 1], [1, -z]] relating the two integrators:
/// M(z) = T^t N(z) when T transports from z0 with M(z0) = N(z0).
Mat2 osculation_frame(cplx z);

/// Recorded step sequence of an adaptive transport with the field values of
/// several fields at every stage node; replaying with coefficients c gives
/// the transport of sum_j c_j phi_j with the same steps.
class TransportPlan {
public:
    using MultiField = std::function<void(cplx z, std::span<cplx> out)>;

    /// Steps are chosen adaptively for phi = sum design[j] phi_j.
    static TransportPlan build(const MultiField& fields, int n_fields, const PathInH& path,
                               std::span<const cplx> design, const TransportOptions& opt = {});

    Mat2 replay(std::span<const cplx> coeffs) const;
    int steps() const { return static_cast<int>(h_.size()); }
    int fields() const { return n_fields_; }

private:
    int n_fields_ = 0;
    std::vector<double> h_;
    // per step and stage (6 stages): velocity and field values (n_fields each)
    std::vector<cplx> vel_;
    std::vector<cplx> val_;
};

struct SolutionSeed {
    cplx u1, du1, u2, du2;
    /// u1' u2 - u1 u2'
    cplx wronskian() const { return du1 * u2 - u1 * du2; }
};

struct DevelopNode {
    double s;
    cplx z;
    cplx u1, u2;
    ComplexPoint f;  // u1 / u2
};

/// Developing map u1/u2 along the path at the path nodes. The seed must have
/// Wronskian u1' u2 - u1 u2' = 1.
std::vector<DevelopNode> develop(const PhiField& phi, const PathInH& path, const SolutionSeed& seed,
                                 const TransportOptions& opt = {});

/// Diagnostic CSV: node,s,re_z,im_z,re_u1,im_u1,re_u2,im_u2,re_f,im_f.
void write_develop_csv(std::ostream& os, const std::vector<DevelopNode>& nodes);

}  // namespace cp1lab
