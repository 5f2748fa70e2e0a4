#include "cp1lab/quaddiff.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
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

std::shared_ptr<const ElementTable> table_for(const MarkedGroup& g, int L) {
    if (is_bolza(g)) return bolza_elements(L);
    return std::make_shared<const ElementTable>(enumerate_elements(g, L));
}

cplx disk_to_h(cplx w) { return cplx(0.0, 1.0) * (1.0 + w) / (1.0 - w); }

}  // namespace

QuadDiff::QuadDiff(const MarkedGroup& g, std::vector<PoleTerm> terms, int truncation_len)
    : group_(g), terms_(std::move(terms)), L_(truncation_len) {
    if (L_ < 0) throw DomainError("QuadDiff: truncation length must be >= 0");
    for (const auto& t : terms_)
        if (!(t.pole.imag() < 0.0)) throw DomainError("poincare_diff: pole must avoid H and R (Im pole < 0)");
    table_ = table_for(g, L_);
}

std::vector<cplx> QuadDiff::evaluate(const std::vector<cplx>& zs) const {
    std::vector<cplx> out(zs.size(), 0.0);
    if (terms_.empty()) return out;
    const std::size_t end = table_->sphere(L_).second;
    const auto& mats = table_->matrices();
    for (std::size_t e = 0; e < end; ++e) {
        const auto& m = mats[e];
        for (std::size_t p = 0; p < zs.size(); ++p) {
            const cplx num = m.a * zs[p] + m.b;
            const cplx den = m.c * zs[p] + m.d;
            cplx s = 0.0;
            for (const auto& t : terms_) {
                // gamma'(z)^2 (gamma z - pole)^-4 = (num - pole den)^-4
                const cplx u = 1.0 / (num - t.pole * den);
                const cplx u2 = u * u;
                s += t.coeff * u2 * u2;
            }
            out[p] += s;
        }
    }
    return out;
}

cplx QuadDiff::operator()(cplx z) const { return evaluate({z})[0]; }

double QuadDiff::tail_estimate(cplx z) const {
    const auto [lo, hi] = table_->sphere(L_);
    const auto& mats = table_->matrices();
    double s = 0.0;
    for (std::size_t e = lo; e < hi; ++e) {
        const cplx num = mats[e].a * z + mats[e].b;
        const cplx den = mats[e].c * z + mats[e].d;
        for (const auto& t : terms_) {
            const double q = std::norm(num - t.pole * den);
            s += std::abs(t.coeff) / (q * q);
        }
    }
    return s;
}

QuadDiff QuadDiff::scaled(cplx s) const {
    QuadDiff out = *this;
    for (auto& t : out.terms_) t.coeff *= s;
    return out;
}

QuadDiff QuadDiff::operator+(const QuadDiff& other) const {
    if (other.L_ != L_) throw DomainError("QuadDiff: cannot add series with different truncation");
    QuadDiff out = *this;
    out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
    return out;
}

CompletedDiff QuadDiff::completed(const AutomorphicBasis& basis) const {
    if (!is_bolza(group_)) throw DomainError("QuadDiff::completed: only available for the Bolza group");
    std::array<cplx, AutomorphicBasis::kDimension> c{};
    for (const auto& t : terms_) {
        const auto d = basis.poincare_limit(t.pole, t.coeff);
        for (int j = 0; j < AutomorphicBasis::kDimension; ++j) c[j] += d[j];
    }
    return {&basis, c};
}

QuadDiff::operator DiffField() const {
    auto self = std::make_shared<const QuadDiff>(*this);
    return [self](cplx z) { return (*self)(z); };
}

QuadDiff poincare_diff(const MarkedGroup& g, cplx pole, int L, cplx coeff) {
    return QuadDiff(g, {PoleTerm{pole, coeff}}, L);
}

double equivariance_residual(const DiffField& phi, const std::vector<EquivarianceSample>& samples) {
    double worst = 0.0;
    for (const auto& s : samples) {
        const cplx gz = s.gamma.apply(s.z).value();
        const cplx d = s.gamma.derivative(s.z);
        const cplx base = phi(s.z);
        const double r = std::abs(phi(gz) * d * d - base) / (1.0 + std::abs(base));
        worst = std::max(worst, r);
    }
    return worst;
}

std::vector<EquivarianceSample> default_equivariance_samples(const MarkedGroup& g, int n_points) {
    std::vector<EquivarianceSample> out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n_points; ++i) {
        const double r = 0.55 * std::sqrt((i + 0.5) / n_points);
        const cplx z = disk_to_h(std::polar(r, golden * i + 0.1));
        const MobiusMap& gamma = g.gens[static_cast<std::size_t>(i % kGenerators)];
        out.push_back({z, (i / kGenerators) % 2 == 0 ? gamma : gamma.inverse()});
    }
    return out;
}

std::vector<cplx> octagon_samples(double h) {
    if (!(h > 0.0)) throw DomainError("octagon_samples: mesh must be positive");
    std::vector<cplx> out;
    const double lim = octagon_geometry().vertex_radius;
    const int n = static_cast<int>(std::ceil(lim / h));
    for (int j = -n; j <= n; ++j)
        for (int i = -n; i <= n; ++i) {
            const cplx w(i * h, j * h);
            if (in_octagon_disk(w, 0.0)) out.push_back(disk_to_h(w));
        }
    return out;
}

namespace {

SupNorm sup_from_values(const std::vector<cplx>& zs, const std::vector<cplx>& vals, double mesh) {
    SupNorm s;
    s.mesh = mesh;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const double v = std::abs(vals[i]) * zs[i].imag() * zs[i].imag();
        if (v > s.value) {
            s.value = v;
            s.argmax = zs[i];
        }
    }
    return s;
}

}  // namespace

SupNorm sup_norm(const DiffField& phi, const std::vector<cplx>& fd_samples, double mesh) {
    if (fd_samples.empty()) throw DomainError("sup_norm: empty sample set");
    std::vector<cplx> vals;
    vals.reserve(fd_samples.size());
    for (cplx z : fd_samples) vals.push_back(phi(z));
    return sup_from_values(fd_samples, vals, mesh);
}

SupNorm sup_norm(const QuadDiff& phi, const std::vector<cplx>& fd_samples, double mesh) {
    if (fd_samples.empty()) throw DomainError("sup_norm: empty sample set");
    return sup_from_values(fd_samples, phi.evaluate(fd_samples), mesh);
}

double l1_norm(const DiffField& phi, int angle_nodes, int radius_nodes) {
    // |phi_H| dxdy = |phi_D| dA_w.
    const GaussRule ang = gauss_legendre(angle_nodes, -std::numbers::pi / 8.0, std::numbers::pi / 8.0);
    double s = 0.0;
    for (int sector = 0; sector < 8; ++sector)
        for (std::size_t ia = 0; ia < ang.nodes.size(); ++ia) {
            const double th = sector * std::numbers::pi / 4.0 + ang.nodes[ia];
            const GaussRule rad = gauss_legendre(radius_nodes, 0.0, octagon_boundary_radius(th));
            for (std::size_t ir = 0; ir < rad.nodes.size(); ++ir) {
                const cplx w = std::polar(rad.nodes[ir], th);
                const cplx z = disk_to_h(w);
                const cplx dz = cplx(0.0, 2.0) / ((1.0 - w) * (1.0 - w));
                s += ang.weights[ia] * rad.weights[ir] * rad.nodes[ir] * std::abs(phi(z) * dz * dz);
            }
        }
    return s;
}

double cauchy_riemann_residual(const DiffField& phi, cplx z, double h) {
    const cplx dx = (phi(z + h) - phi(z - h)) / (2.0 * h);
    const cplx dy = (phi(z + cplx(0.0, h)) - phi(z - cplx(0.0, h))) / (2.0 * h);
    return std::abs(0.5 * (dx + cplx(0.0, 1.0) * dy));
}

const std::array<cplx, 3>& basis_poles() {
    static const std::array<cplx, 3> poles{cplx(0.0, -1.0), cplx(0.35, -0.8), cplx(-0.6, -1.4)};
    return poles;
}

const std::vector<cplx>& extra_poles() {
    static const std::vector<cplx> poles{cplx(0.9, -0.55), cplx(-0.25, -0.45), cplx(1.7, -2.1)};
    return poles;
}

std::vector<cplx> rank_sample_points(int n) {
    std::vector<cplx> out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double r = 0.62 * std::sqrt((i + 0.5) / n);
        out.push_back(disk_to_h(std::polar(r, golden * i + 0.37)));
    }
    return out;
}

std::vector<std::vector<cplx>> sampling_matrix(const std::vector<QuadDiff>& series, const std::vector<cplx>& points) {
    std::vector<std::vector<cplx>> m(points.size(), std::vector<cplx>(series.size()));
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto vals = series[k].evaluate(points);
        for (std::size_t p = 0; p < points.size(); ++p) m[p][k] = vals[p] * points[p].imag() * points[p].imag();
    }
    return m;
}

std::vector<double> sampling_singular_values(const std::vector<std::vector<cplx>>& m) {
    if (m.empty() || m[0].empty()) return {};
    Eigen::MatrixXcd a(m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const double n = a.col(j).norm();
        if (n > 0.0) a.col(j) /= n;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

RankEstimate sampling_rank(const std::vector<QuadDiff>& series, const std::vector<cplx>& points) {
    if (series.empty() || points.empty()) throw DomainError("sampling_rank: empty input");
    const auto m = sampling_matrix(series, points);
    const auto rows = static_cast<Eigen::Index>(points.size());
    const auto cols = static_cast<Eigen::Index>(series.size());
    Eigen::MatrixXcd a(rows, cols), e(rows, cols);
    RankEstimate out;
    for (Eigen::Index j = 0; j < cols; ++j) {
        const CompletedDiff lim = series[static_cast<std::size_t>(j)].completed();
        for (Eigen::Index i = 0; i < rows; ++i) {
            const cplx z = points[static_cast<std::size_t>(i)];
            const double y2 = z.imag() * z.imag();
            a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            e(i, j) = a(i, j) - lim(z) * y2;
            out.max_tail = std::max(out.max_tail, series[static_cast<std::size_t>(j)].tail_estimate(z) * y2);
        }
        const double n = a.col(j).norm();
        if (n > 0.0) {
            a.col(j) /= n;
            e.col(j) /= n;
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    out.noise = Eigen::BDCSVD<Eigen::MatrixXcd>(e).singularValues()(0);
    for (double s : out.singular_values)
        if (s > out.noise) ++out.rank;
    return out;
}

DiffBasis basis(const MarkedGroup& g, int L) {
    DiffBasis b;
    std::vector<QuadDiff> v;
    for (int k = 0; k < 3; ++k) {
        b.series[k] = poincare_diff(g, basis_poles()[k], L);
        v.push_back(b.series[k]);
    }
    const auto sv = sampling_singular_values(sampling_matrix(v, rank_sample_points()));
    b.gram_rank_certificate = sv.back();
    if (!(b.gram_rank_certificate > 1e-6))
        throw NumericalError("basis: rank certificate below threshold; increase L or change poles");
    const auto samples = octagon_samples();
    for (int k = 0; k < 3; ++k) {
        const CompletedDiff c = b.series[k].completed();
        const double n = sup_norm(DiffField(c), samples).value;
        b.normalization[k] = n;
        b.normalized[k] = c.scaled(1.0 / n);
    }
    return b;
}

}  // namespace cp1lab
