#include "cp1lab/schwarzian.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "cp1lab/hyperbolic.hpp"

namespace cp1lab {

// ------------------------------------------------------------ analytic maps

AnalyticMap1D::AnalyticMap1D(std::string name, Evaluator jet) : name_(std::move(name)), jet_(std::move(jet)) {
    // Derivative consistency on a few probes where the map is regular.
    static const cplx probes[] = {cplx(0.3, 0.2), cplx(-0.4, 0.7), cplx(0.15, 1.3)};
    for (cplx z : probes) {
        const Jet3 j = jet_(z);
        if (!std::isfinite(std::abs(j.f)) || !std::isfinite(std::abs(j.f1)) || std::abs(j.f1) < 1e-8 ||
            std::abs(j.f) > 1e8)
            continue;
        const double r = derivative_consistency(z);
        if (!(r <= 1e-6 * (1.0 + std::abs(j.f))))
            throw NumericalError("AnalyticMap1D '" + name_ + "': derivative data inconsistent with values");
    }
}

double AnalyticMap1D::derivative_consistency(cplx z) const {
    const double h = 1e-5 * (1.0 + std::abs(z));
    const cplx fd = (jet_(z + h).f - jet_(z - h).f) / (2.0 * h);
    const cplx d = jet_(z).f1;
    return std::abs(d - fd) / (1.0 + std::abs(d));
}

AnalyticMap1D AnalyticMap1D::mobius(const MobiusMap& m) {
    return AnalyticMap1D("mobius", [m](cplx z) {
        const cplx q = m.c() * z + m.d();
        const cplx f = (m.a() * z + m.b()) / q;
        const cplx f1 = 1.0 / (q * q);
        const cplx f2 = -2.0 * m.c() * f1 / q;
        const cplx f3 = 6.0 * m.c() * m.c() * f1 / (q * q);
        return Jet3{f, f1, f2, f3};
    });
}

AnalyticMap1D AnalyticMap1D::exp(cplx k) {
    return AnalyticMap1D("exp", [k](cplx z) {
        const cplx e = std::exp(k * z);
        return Jet3{e, k * e, k * k * e, k * k * k * e};
    });
}

AnalyticMap1D AnalyticMap1D::tan() {
    return AnalyticMap1D("tan", [](cplx z) {
        const cplx t = std::tan(z);
        const cplx s = 1.0 + t * t;  // sec^2
        return Jet3{t, s, 2.0 * t * s, 2.0 * s * (1.0 + 3.0 * t * t)};
    });
}

AnalyticMap1D AnalyticMap1D::power(cplx p) {
    return AnalyticMap1D("power", [p](cplx z) {
        const cplx f = std::pow(z, p);
        const cplx f1 = p * f / z;
        const cplx f2 = (p - 1.0) * f1 / z;
        const cplx f3 = (p - 2.0) * f2 / z;
        return Jet3{f, f1, f2, f3};
    });
}

AnalyticMap1D AnalyticMap1D::compose(const AnalyticMap1D& f, const AnalyticMap1D& g) {
    return AnalyticMap1D(f.name() + "(" + g.name() + ")", [f, g](cplx z) {
        const Jet3 gj = g.jet(z);
        const Jet3 fj = f.jet(gj.f);
        const cplx d1 = fj.f1 * gj.f1;
        const cplx d2 = fj.f2 * gj.f1 * gj.f1 + fj.f1 * gj.f2;
        const cplx d3 = fj.f3 * gj.f1 * gj.f1 * gj.f1 + 3.0 * fj.f2 * gj.f1 * gj.f2 + fj.f1 * gj.f3;
        return Jet3{fj.f, d1, d2, d3};
    });
}

double numeric_step(cplx z) { return 5e-3 * (1.0 + std::abs(z)); }

AnalyticMap1D AnalyticMap1D::numeric(std::string name, std::function<cplx(cplx)> f) {
    return AnalyticMap1D(std::move(name), [f](cplx z) {
        // For holomorphic f the ring samples f(z + h i^k) isolate the Taylor
        // coefficients up to aliasing of order h^4.
        const double h = numeric_step(z);
        const cplx i(0.0, 1.0);
        const cplx fp = f(z + h), fm = f(z - h), gp = f(z + i * h), gm = f(z - i * h);
        const cplx f0 = f(z);
        const cplx c1 = (fp - fm - i * (gp - gm)) / (4.0 * h);
        const cplx c2 = (fp + fm - gp - gm) / (4.0 * h * h);  // f''/2
        const cplx c3 = (fp - fm + i * (gp - gm)) / (4.0 * h * h * h);  // f'''/6
        return Jet3{f0, c1, 2.0 * c2, 6.0 * c3};
    });
}

cplx schwarzian_of_jet(const Jet3& j) {
    if (!(std::abs(j.f1) >= 1e-12)) throw DomainError("schwarzian_at: critical point (|f'| < 1e-12)");
    const cplx r = j.f2 / j.f1;
    return j.f3 / j.f1 - 1.5 * r * r;
}

cplx schwarzian_at(const AnalyticMap1D& f, cplx z) { return schwarzian_of_jet(f.jet(z)); }

double cocycle_residual(const AnalyticMap1D& f, const AnalyticMap1D& g, cplx z) {
    const Jet3 gj = g.jet(z);
    const cplx lhs = schwarzian_at(AnalyticMap1D::compose(f, g), z);
    const cplx rhs = schwarzian_at(f, gj.f) * gj.f1 * gj.f1 + schwarzian_of_jet(gj);
    return std::abs(lhs - rhs);
}

// ------------------------------------------------------------------ paths

namespace {

std::vector<double> uniform_nodes(int n) {
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    return out;
}

}  // namespace

PathInH PathInH::geodesic(cplx z0, cplx z1, double spacing) {
    if (!(z0.imag() > 0.0) || !(z1.imag() > 0.0)) throw DomainError("PathInH: endpoints must lie in H");
    PathInH p;
    p.kind_ = Kind::geodesic;
    p.z0_ = z0;
    p.z1_ = z1;
    p.length_ = hyperbolic_distance(z0, z1);
    if (z0 != z1) {
        const BoundaryGeodesic g = geodesic_through(z0, z1);
        const MobiusMap to_axis = geodesic_normalizer(g.from, g.to);
        p.from_axis_ = to_axis.inverse();
        p.log_start_ = std::log(to_axis.apply(z0).value().imag());
        p.log_len_ = std::log(to_axis.apply(z1).value().imag()) - p.log_start_;
    }
    p.nodes_ = uniform_nodes(std::max(1, static_cast<int>(std::ceil(p.length_ / spacing))));
    return p;
}

PathInH PathInH::straight(cplx z0, cplx z1, double spacing) {
    if (!(z0.imag() > 0.0) || !(z1.imag() > 0.0)) throw DomainError("PathInH: endpoints must lie in H");
    PathInH p;
    p.kind_ = Kind::straight;
    p.z0_ = z0;
    p.z1_ = z1;
    // hyperbolic length of the Euclidean segment: int |dz| / y (midpoint rule, fine mesh)
    const int n = 256;
    double len = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx z = z0 + (z1 - z0) * ((i + 0.5) / n);
        len += std::abs(z1 - z0) / n / z.imag();
    }
    p.length_ = len;
    p.nodes_ = uniform_nodes(std::max(1, static_cast<int>(std::ceil(len / spacing))));
    return p;
}

cplx PathInH::point(double s) const {
    if (kind_ == Kind::straight) return z0_ + (z1_ - z0_) * s;
    if (z0_ == z1_) return z0_;
    if (s <= 0.0) return z0_;
    if (s >= 1.0) return z1_;
    return from_axis_.apply(cplx(0.0, std::exp(log_start_ + s * log_len_))).value();
}

cplx PathInH::velocity(double s) const {
    if (kind_ == Kind::straight) return z1_ - z0_;
    if (z0_ == z1_) return 0.0;
    const cplx on_axis(0.0, std::exp(log_start_ + s * log_len_));
    return from_axis_.derivative(on_axis) * on_axis * log_len_;
}

// -------------------------------------------------------------- transport

double Mat2::max_abs() const {
    return std::max(std::max(std::abs(m00), std::abs(m01)), std::max(std::abs(m10), std::abs(m11)));
}

double Mat2::distance(const Mat2& o) const {
    return std::max(std::max(std::abs(m00 - o.m00), std::abs(m01 - o.m01)),
                    std::max(std::abs(m10 - o.m10), std::abs(m11 - o.m11)));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
constexpr double kA[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5.0, 0, 0, 0, 0, 0},
    {3.0 / 40.0, 9.0 / 40.0, 0, 0, 0, 0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0, 0, 0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0, 0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0}};
constexpr double kB[7] = {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0};
constexpr double kE[7] = {35.0 / 384.0 - 5179.0 / 57600.0,   0.0,
                          500.0 / 1113.0 - 7571.0 / 16695.0, 125.0 / 192.0 - 393.0 / 640.0,
                          -2187.0 / 6784.0 + 92097.0 / 339200.0, 11.0 / 84.0 - 187.0 / 2100.0,
                          -1.0 / 40.0};

// One step of Y' = A(s) Y; returns the 5th-order update and the embedded error.
template <class Gen>
Mat2 dp_step(const Gen& gen, double s, double h, const Mat2& y, Mat2* err) {
    Mat2 k[7];
    for (int i = 0; i < 7; ++i) {
        Mat2 yi = y;
        for (int j = 0; j < i; ++j)
            if (kA[i][j] != 0.0) yi = yi + k[j] * (h * kA[i][j]);
        k[i] = gen(s + kC[i] * h) * yi;
    }
    Mat2 out = y;
    Mat2 e{0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 7; ++i) {
        if (kB[i] != 0.0) out = out + k[i] * (h * kB[i]);
        if (kE[i] != 0.0) e = e + k[i] * (h * kE[i]);
    }
    if (err) *err = e;
    return out;
}

template <class Gen, class OnStop, class OnAccept>
Mat2 integrate(const Gen& gen, const std::vector<double>& stops, const TransportOptions& opt, const OnStop& on_stop,
               const OnAccept& on_accept, int* steps_out = nullptr, int* rejected_out = nullptr) {
    Mat2 y = Mat2::identity();
    double s = 0.0;
    double h = 0.05;
    int steps = 0, rejected = 0;
    on_stop(std::size_t{0}, y);
    for (std::size_t k = 1; k < stops.size(); ++k) {
        const double target = stops[k];
        while (s < target) {
            const bool last = h >= target - s;
            const double step = last ? target - s : h;
            Mat2 err;
            const Mat2 y_new = dp_step(gen, s, step, y, &err);
            const double e = err.max_abs() / (1.0 + y.max_abs());
            const double allowed = opt.tol * step;
            if (!std::isfinite(e)) throw NumericalError("transport: non-finite values (stiffness/pole suspected)");
            if (e <= allowed) {
                on_accept(s, step);
                y = y_new;
                s = last ? target : s + step;
                ++steps;
                if (steps > opt.max_steps) throw NumericalError("transport: step budget exceeded");
            } else {
                ++rejected;
            }
            const double fac = e == 0.0 ? 5.0 : 0.9 * std::pow(allowed / e, 0.25);
            const double grown = step * std::clamp(fac, 0.2, 5.0);
            if (!last || e > allowed) h = grown;
            if (h < opt.min_step) throw NumericalError("transport: step collapse (stiffness/pole suspected)");
        }
        on_stop(k, y);
    }
    if (steps_out) *steps_out = steps;
    if (rejected_out) *rejected_out = rejected;
    return y;
}

Mat2 schwarzian_generator(cplx v, cplx phi) { return {0.0, v, -0.5 * phi * v, 0.0}; }

}  // namespace

TransportMatrix transport(const PhiField& phi, const PathInH& path, const TransportOptions& opt) {
    auto gen = [&](double s) { return schwarzian_generator(path.velocity(s), phi(path.point(s))); };
    TransportMatrix out;
    out.T = integrate(
        gen, path.nodes(), opt, [](std::size_t, const Mat2&) {}, [](double, double) {}, &out.steps, &out.rejected);
    return out;
}

Mat2 osculation_frame(cplx z) { return {0.0, 1.0, 1.0, -z}; }

Mat2 transport_osculating(const PhiField& phi, const PathInH& path, const TransportOptions& opt) {
    // dM/ds = M B(s) with B = -(1/2) phi [[z, -z^2], [1, -z]] z'; integrate the
    // transpose so the generic left-multiplying integrator applies, started at I,
    // then M(s) = N(z0) P(s) with P the propagator of the right-multiplied system.
    auto gen = [&](double s) {
        const cplx z = path.point(s);
        const cplx c = -0.5 * phi(z) * path.velocity(s);
        const Mat2 b{c * z, -c * z * z, c, -c * z};
        return b.transposed();
    };
    const Mat2 pt = integrate(gen, path.nodes(), opt, [](std::size_t, const Mat2&) {}, [](double, double) {});
    return osculation_frame(path.start()) * pt.transposed();
}

TransportPlan TransportPlan::build(const MultiField& fields, int n_fields, const PathInH& path,
                                   std::span<const cplx> design, const TransportOptions& opt) {
    if (static_cast<int>(design.size()) != n_fields) throw DomainError("TransportPlan: design size mismatch");
    std::vector<cplx> buf(static_cast<std::size_t>(n_fields));
    auto combined = [&](cplx z) {
        fields(z, buf);
        cplx s = 0.0;
        for (int j = 0; j < n_fields; ++j) s += design[static_cast<std::size_t>(j)] * buf[static_cast<std::size_t>(j)];
        return s;
    };
    TransportPlan plan;
    plan.n_fields_ = n_fields;
    std::vector<double> starts;
    auto gen = [&](double s) { return schwarzian_generator(path.velocity(s), combined(path.point(s))); };
    integrate(
        gen, path.nodes(), opt, [](std::size_t, const Mat2&) {},
        [&](double s, double h) {
            starts.push_back(s);
            plan.h_.push_back(h);
        });
    plan.vel_.reserve(starts.size() * 6);
    plan.val_.reserve(starts.size() * 6 * static_cast<std::size_t>(n_fields));
    for (std::size_t k = 0; k < starts.size(); ++k) {
        for (int i = 0; i < 6; ++i) {
            const double s = starts[k] + kC[i] * plan.h_[k];
            plan.vel_.push_back(path.velocity(s));
            fields(path.point(s), buf);
            plan.val_.insert(plan.val_.end(), buf.begin(), buf.end());
        }
    }
    return plan;
}

Mat2 TransportPlan::replay(std::span<const cplx> coeffs) const {
    if (static_cast<int>(coeffs.size()) != n_fields_) throw DomainError("TransportPlan: coefficient size mismatch");
    Mat2 y = Mat2::identity();
    const std::size_t nf = static_cast<std::size_t>(n_fields_);
    for (std::size_t k = 0; k < h_.size(); ++k) {
        const double h = h_[k];
        Mat2 kk[6];
        for (int i = 0; i < 6; ++i) {
            const std::size_t idx = k * 6 + static_cast<std::size_t>(i);
            cplx phi = 0.0;
            for (std::size_t j = 0; j < nf; ++j) phi += coeffs[j] * val_[idx * nf + j];
            Mat2 yi = y;
            for (int j = 0; j < i; ++j)
                if (kA[i][j] != 0.0) yi = yi + kk[j] * (h * kA[i][j]);
            kk[i] = schwarzian_generator(vel_[idx], phi) * yi;
        }
        for (int i = 0; i < 6; ++i)
            if (kB[i] != 0.0) y = y + kk[i] * (h * kB[i]);
    }
    return y;
}

std::vector<DevelopNode> develop(const PhiField& phi, const PathInH& path, const SolutionSeed& seed,
                                 const TransportOptions& opt) {
    if (std::abs(seed.wronskian() - 1.0) > 1e-10)
        throw DomainError("develop: seed Wronskian u1' u2 - u1 u2' must equal 1");
    std::vector<DevelopNode> out;
    auto gen = [&](double s) { return schwarzian_generator(path.velocity(s), phi(path.point(s))); };
    const auto& nodes = path.nodes();
    integrate(
        gen, nodes, opt,
        [&](std::size_t k, const Mat2& y) {
            const cplx u1 = y.m00 * seed.u1 + y.m01 * seed.du1;
            const cplx u2 = y.m00 * seed.u2 + y.m01 * seed.du2;
            out.push_back({nodes[k], path.point(nodes[k]), u1, u2, ComplexPoint(u1, u2)});
        },
        [](double, double) {});
    return out;
}

void write_develop_csv(std::ostream& os, const std::vector<DevelopNode>& nodes) {
    os << "node,s,re_z,im_z,re_u1,im_u1,re_u2,im_u2,re_f,im_f\n";
    os.precision(17);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        os << i << ',' << n.s << ',' << n.z.real() << ',' << n.z.imag() << ',' << n.u1.real() << ',' << n.u1.imag()
           << ',' << n.u2.real() << ',' << n.u2.imag() << ',';
        if (n.f.is_infinite())
            os << "inf,inf\n";
        else
            os << n.f.value().real() << ',' << n.f.value().imag() << '\n';
    }
}

}  // namespace cp1lab
