#include "cp1lab/automorphic.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "cp1lab/fuchsian.hpp"
#include "cp1lab/quadrature.hpp"

namespace cp1lab {

OctagonReduction reduce_to_octagon(cplx w) {
    if (!(std::abs(w) < 1.0)) throw DomainError("reduce_to_octagon: point outside the unit disk");
    const auto& geo = octagon_geometry();
    std::array<MobiusMap, 8> pairings;
    for (int k = 0; k < 4; ++k) {
        pairings[2 * k] = geo.disk_pairings[k];
        pairings[2 * k + 1] = geo.disk_pairings[k].inverse();
    }
    OctagonReduction out{w, 1.0, 0};
    for (int it = 0; it < 10000; ++it) {
        double best = std::abs(out.w);
        int best_k = -1;
        cplx best_w;
        for (int k = 0; k < 8; ++k) {
            const cplx v = pairings[k].apply(out.w).value();
            if (std::abs(v) < best - 1e-13) {
                best = std::abs(v);
                best_k = k;
                best_w = v;
            }
        }
        if (best_k < 0) return out;
        const cplx d = pairings[best_k].derivative(out.w);
        out.factor *= d * d;
        out.w = best_w;
        ++out.steps;
    }
    throw NumericalError("reduce_to_octagon: no convergence");
}

namespace {

cplx horner(const std::vector<cplx>& a, cplx x) {
    cplx s = 0.0;
    for (std::size_t n = a.size(); n-- > 0;) s = s * x + a[n];
    return s;
}

using Coeffs = std::array<std::vector<cplx>, AutomorphicBasis::kDimension>;

// Petersson products <f, g> = int_F f conj(g) (1 - |w|^2)^2 / 4 dA over the
// octagon, by polar Gauss quadrature on the eight sectors.
Eigen::Matrix3cd petersson_gram(const Coeffs& c, double rho, int n_angle, int n_radius) {
    Eigen::Matrix3cd gram = Eigen::Matrix3cd::Zero();
    const GaussRule ang = gauss_legendre(n_angle, -std::numbers::pi / 8.0, std::numbers::pi / 8.0);
    for (int sector = 0; sector < 8; ++sector) {
        for (std::size_t ia = 0; ia < ang.nodes.size(); ++ia) {
            const double th = sector * std::numbers::pi / 4.0 + ang.nodes[ia];
            const GaussRule rad = gauss_legendre(n_radius, 0.0, octagon_boundary_radius(th));
            for (std::size_t ir = 0; ir < rad.nodes.size(); ++ir) {
                const double r = rad.nodes[ir];
                const cplx x = std::polar(r, th) / rho;
                const double wt = ang.weights[ia] * rad.weights[ir] * r * (1.0 - r * r) * (1.0 - r * r) / 4.0;
                std::array<cplx, AutomorphicBasis::kDimension> f;
                for (int j = 0; j < AutomorphicBasis::kDimension; ++j) f[j] = horner(c[j], x);
                for (int i = 0; i < AutomorphicBasis::kDimension; ++i)
                    for (int j = 0; j < AutomorphicBasis::kDimension; ++j) gram(i, j) += wt * f[i] * std::conj(f[j]);
            }
        }
    }
    return gram;
}

}  // namespace

const AutomorphicBasis& AutomorphicBasis::bolza() {
    static const AutomorphicBasis basis(Options{});
    return basis;
}

AutomorphicBasis::AutomorphicBasis(const Options& opt) : opt_(opt) {
    const auto& geo = octagon_geometry();
    rho_ = geo.vertex_radius;
    const int n_terms = opt.terms;
    const int per_side = opt.points_per_side;

    // Rows: phi(g w) g'(w)^2 - phi(w) = 0 at points w on the side that g maps
    // onto its opposite.
    Eigen::MatrixXcd m(4 * per_side, n_terms);
    const GaussRule rule = gauss_legendre(per_side);
    for (int k = 0; k < 4; ++k) {
        const MobiusMap& g = geo.disk_pairings[k];
        const double center = std::numbers::pi + k * std::numbers::pi / 4.0;
        for (int i = 0; i < per_side; ++i) {
            const double th = center + std::numbers::pi / 8.0 * rule.nodes[static_cast<std::size_t>(i)];
            const cplx w = std::polar(octagon_boundary_radius(th), th);
            const cplx gw = g.apply(w).value();
            const cplx d = g.derivative(w);
            const cplx jac = d * d;
            const cplx x = w / rho_, y = gw / rho_;
            cplx px = 1.0, py = 1.0;
            for (int n = 0; n < n_terms; ++n) {
                m(k * per_side + i, n) = py * jac - px;
                px *= x;
                py *= y;
            }
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    sigma_.assign(sv.data(), sv.data() + sv.size());
    const Eigen::MatrixXcd& v = svd.matrixV();

    std::array<std::vector<cplx>, kDimension> raw;
    for (int j = 0; j < kDimension; ++j) {
        raw[j].resize(static_cast<std::size_t>(n_terms));
        for (int n = 0; n < n_terms; ++n) raw[j][static_cast<std::size_t>(n)] = v(n, n_terms - 1 - j);
    }
    const Eigen::Matrix3cd gram = petersson_gram(raw, rho_, opt.quad_angle, opt.quad_radius);
    const Eigen::Matrix3cd l = gram.llt().matrixL();
    const Eigen::Matrix3cd linv = l.inverse();
    for (int i = 0; i < kDimension; ++i) {
        std::vector<cplx> c(static_cast<std::size_t>(n_terms), 0.0);
        for (int j = 0; j < kDimension; ++j)
            for (int n = 0; n < n_terms; ++n) c[static_cast<std::size_t>(n)] += linv(i, j) * raw[j][static_cast<std::size_t>(n)];
        coeff_[i] = std::move(c);
    }
}

cplx AutomorphicBasis::series(int j, cplx w_scaled) const { return horner(coeff_[j], w_scaled); }

std::array<cplx, AutomorphicBasis::kDimension> AutomorphicBasis::disk_values(cplx w) const {
    const OctagonReduction red = reduce_to_octagon(w);
    std::array<cplx, kDimension> out;
    for (int j = 0; j < kDimension; ++j) out[j] = series(j, red.w / rho_) * red.factor;
    return out;
}

std::array<cplx, AutomorphicBasis::kDimension> AutomorphicBasis::values(cplx z) const {
    if (!(z.imag() > 0.0)) throw DomainError("AutomorphicBasis: point must lie in H");
    const cplx zi = z + cplx(0.0, 1.0);
    const cplx w = (z - cplx(0.0, 1.0)) / zi;
    const cplx dw = cplx(0.0, 2.0) / (zi * zi);
    auto out = disk_values(w);
    for (auto& v : out) v *= dw * dw;
    return out;
}

double AutomorphicBasis::null_residual() const {
    return sigma_.empty() ? 0.0 : sigma_[sigma_.size() - 1 - (kDimension - 1)];
}

double AutomorphicBasis::spectral_gap() const {
    return sigma_.size() <= kDimension ? 0.0 : sigma_[sigma_.size() - 1 - kDimension];
}

std::array<std::array<cplx, AutomorphicBasis::kDimension>, AutomorphicBasis::kDimension> AutomorphicBasis::gram()
    const {
    const Eigen::Matrix3cd m = petersson_gram(coeff_, rho_, opt_.quad_angle, opt_.quad_radius);
    std::array<std::array<cplx, kDimension>, kDimension> g{};
    for (int i = 0; i < kDimension; ++i)
        for (int j = 0; j < kDimension; ++j) g[i][j] = m(i, j);
    return g;
}

std::array<cplx, AutomorphicBasis::kDimension> AutomorphicBasis::poincare_limit(cplx pole, cplx coeff) const {
    if (!(pole.imag() < 0.0)) throw DomainError("poincare_limit: pole must lie in the lower half-plane");
    const auto q = values(std::conj(pole));
    std::array<cplx, kDimension> out;
    for (int j = 0; j < kDimension; ++j) out[j] = std::numbers::pi / 12.0 * coeff * std::conj(q[j]);
    return out;
}

cplx CompletedDiff::operator()(cplx z) const {
    if (basis_ == nullptr) return 0.0;
    const auto q = basis_->values(z);
    cplx s = 0.0;
    for (int j = 0; j < AutomorphicBasis::kDimension; ++j) s += coords_[j] * q[j];
    return s;
}

CompletedDiff CompletedDiff::scaled(cplx s) const {
    auto c = coords_;
    for (auto& x : c) x *= s;
    return {basis_, c};
}

}  // namespace cp1lab
