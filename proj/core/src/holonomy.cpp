#include "cp1lab/holonomy.hpp"

#include <cmath>

namespace cp1lab {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::explicit_generators: return "explicit-generators";
        case Provenance::ode_monodromy: return "ode-monodromy";
        case Provenance::bending: return "bending";
    }
    return "unknown";
}

Representation::Representation(std::array<MobiusMap, kGenerators> gens, Word relator, RepresentationOrigin origin)
    : gens_(gens), relator_(std::move(relator)), origin_(std::move(origin)) {}

Representation Representation::fuchsian(const MarkedGroup& g) { return Representation(g.gens, g.relator); }

MobiusMap Representation::operator()(const Word& w) const {
    MobiusMap m;
    for (int letter : w.letters()) {
        const int idx = std::abs(letter);
        if (idx < 1 || idx > kGenerators) throw DomainError("Representation: letter out of range");
        const MobiusMap& g = gens_[static_cast<std::size_t>(idx - 1)];
        m = m * (letter > 0 ? g : g.inverse());
    }
    return m;
}

double Representation::relator_defect() const { return (*this)(relator_).distance_from_identity(); }

double Representation::homomorphism_defect(const std::vector<std::pair<Word, Word>>& probes) const {
    double worst = 0.0;
    for (const auto& [u, v] : probes) {
        const MobiusMap lhs = (*this)(u * v);
        const MobiusMap rhs = (*this)(u) * (*this)(v);
        worst = std::max(worst, lhs.psl2_distance(rhs));
    }
    return worst;
}

Representation Representation::conjugated(const MobiusMap& a) const {
    std::array<MobiusMap, kGenerators> g;
    for (int i = 0; i < kGenerators; ++i) g[i] = gens_[i].conjugated_by(a);
    return Representation(g, relator_, origin_);
}

const std::array<Word, Character::kWords>& Character::words() {
    static const std::array<Word, kWords> w{
        Word{1},     Word{2},     Word{3},     Word{4},     Word{1, 2},
        Word{1, 3},  Word{1, 4},  Word{2, 3},  Word{2, 4},  Word{3, 4},
        commutator(Word{1}, Word{2}), commutator(Word{3}, Word{4})};
    return w;
}

double Character::distance(const Character& other) const {
    double worst = 0.0;
    for (int i = 0; i < kWords; ++i) worst = std::max(worst, std::abs(values[i] - other.values[i]));
    return worst;
}

Character character_of(const Representation& r) {
    Character ch;
    const auto& w = Character::words();
    for (int i = 0; i < Character::kWords; ++i) ch.values[i] = r(w[i]).trace_squared();
    return ch;
}

MobiusMap monodromy_from_transport(const Mat2& t, const MobiusMap& gamma, cplx z0) {
    const cplx q = gamma.c() * z0 + gamma.d();
    const Mat2 f{q, 0.0, gamma.c(), 1.0 / q};
    const Mat2 s{z0, 1.0, 1.0, 0.0};
    const Mat2 s_inv{0.0, 1.0, 1.0, -z0};
    const Mat2 r = (s_inv * f * t * s).transposed();
    return MobiusMap(r.m00, r.m01, r.m10, r.m11);
}

MobiusMap monodromy(const PhiField& phi, const MobiusMap& gamma, cplx z0, const TransportOptions& opt) {
    const cplx z1 = gamma.apply(z0).value();
    const TransportMatrix t = transport(phi, PathInH::geodesic(z0, z1), opt);
    return monodromy_from_transport(t.T, gamma, z0);
}

Representation holonomy_rep(const MarkedGroup& g, const PhiField& phi, std::vector<cplx> c,
                            const HolonomyOptions& opt) {
    if (opt.check_equivariance) {
        const double r = equivariance_residual(phi, default_equivariance_samples(g));
        if (!(r < opt.equivariance_tol))
            throw DomainError("holonomy_rep: differential is not equivariant (residual " + std::to_string(r) + ")");
    }
    std::array<MobiusMap, kGenerators> gens;
    for (int i = 0; i < kGenerators; ++i) gens[i] = monodromy(phi, g.gens[i], g.basepoint, opt.transport);
    RepresentationOrigin origin{Provenance::ode_monodromy, std::move(c), 0.0, {}};
    Representation rep(gens, g.relator, std::move(origin));
    if (!(rep.relator_defect() <= opt.relator_tol))
        throw NumericalError("holonomy_rep: integration tolerance insufficient (relator defect " +
                             std::to_string(rep.relator_defect()) + ")");
    return rep;
}

namespace {

CompletedDiff combine_completed(const DiffBasis& basis, std::span<const cplx> c) {
    if (c.size() != 3) throw DomainError("holonomy: expected 3 basis coefficients");
    std::array<cplx, AutomorphicBasis::kDimension> coords{};
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < AutomorphicBasis::kDimension; ++j) coords[j] += c[k] * basis.normalized[k].coords()[j];
    return {basis.normalized[0].basis(), coords};
}

}  // namespace

PhiField combine(const DiffBasis& basis, std::span<const cplx> c) { return combine_completed(basis, c); }

Representation holonomy_rep(const MarkedGroup& g, const DiffBasis& basis, std::span<const cplx> c,
                            const HolonomyOptions& opt) {
    return holonomy_rep(g, combine(basis, c), std::vector<cplx>(c.begin(), c.end()), opt);
}

const DiffBasis& default_basis() {
    static const DiffBasis b = basis(bolza_group(), 8);
    return b;
}

MonodromyPlan::MonodromyPlan(const MarkedGroup& g, const DiffBasis& basis, std::span<const cplx> design,
                             const TransportOptions& opt)
    : group_(g) {
    if (design.size() != 3) throw DomainError("MonodromyPlan: expected 3 design coefficients");
    const AutomorphicBasis* ab = basis.normalized[0].basis();
    std::array<std::array<cplx, AutomorphicBasis::kDimension>, 3> coords;
    for (int k = 0; k < 3; ++k) coords[k] = basis.normalized[k].coords();
    auto fields = [ab, coords](cplx z, std::span<cplx> out) {
        const auto q = ab->values(z);
        for (int k = 0; k < 3; ++k) {
            cplx s = 0.0;
            for (int j = 0; j < AutomorphicBasis::kDimension; ++j) s += coords[k][j] * q[j];
            out[k] = s;
        }
    };
    for (int i = 0; i < kGenerators; ++i) {
        const cplx z1 = g.gens[i].apply(g.basepoint).value();
        plans_.push_back(TransportPlan::build(fields, 3, PathInH::geodesic(g.basepoint, z1), design, opt));
    }
}

Representation MonodromyPlan::at(std::span<const cplx> c) const {
    std::array<MobiusMap, kGenerators> gens;
    for (int i = 0; i < kGenerators; ++i)
        gens[i] = monodromy_from_transport(plans_[i].replay(c), group_.gens[i], group_.basepoint);
    return Representation(gens, group_.relator,
                          RepresentationOrigin{Provenance::ode_monodromy, std::vector<cplx>(c.begin(), c.end()), 0.0, {}});
}

int MonodromyPlan::total_steps() const {
    int n = 0;
    for (const auto& p : plans_) n += p.steps();
    return n;
}

std::array<HolomorphyResidual, Character::kWords> holomorphy_residuals(const MarkedGroup& g, const DiffBasis& basis,
                                                                        int k, cplx c0, double h,
                                                                        const HolonomyOptions& opt) {
    if (k < 0 || k > 2) throw DomainError("holomorphy_residual: direction index must be 0, 1 or 2");
    std::array<Character, 4> f;
    const cplx dirs[4] = {1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, -1.0)};
    for (int m = 0; m < 4; ++m) {
        std::array<cplx, 3> c{};
        c[k] = c0 + h * dirs[m];
        f[m] = character_of(holonomy_rep(g, basis, c, opt));
    }
    std::array<HolomorphyResidual, Character::kWords> out;
    const cplx i(0.0, 1.0);
    for (int w = 0; w < Character::kWords; ++w) {
        const cplx re = f[0].values[w] - f[2].values[w];
        const cplx im = f[1].values[w] - f[3].values[w];
        out[w].d = std::abs(re - i * im) / (4.0 * h);
        out[w].dbar = std::abs(re + i * im) / (4.0 * h);
    }
    return out;
}

HolomorphyResidual holomorphy_residual(const MarkedGroup& g, const DiffBasis& basis, int k, cplx c0, const Word& word,
                                       double h, const HolonomyOptions& opt) {
    if (k < 0 || k > 2) throw DomainError("holomorphy_residual: direction index must be 0, 1 or 2");
    std::array<cplx, 4> f;
    const cplx dirs[4] = {1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, -1.0)};
    for (int m = 0; m < 4; ++m) {
        std::array<cplx, 3> c{};
        c[k] = c0 + h * dirs[m];
        f[m] = holonomy_rep(g, basis, c, opt)(word).trace_squared();
    }
    const cplx i(0.0, 1.0);
    const cplx re = f[0] - f[2], im = f[1] - f[3];
    return {std::abs(re + i * im) / (4.0 * h), std::abs(re - i * im) / (4.0 * h)};
}

HolonomyRecord make_record(const Representation& r, const HolonomyOptions& opt) {
    return {r.origin().c, character_of(r), r.relator_defect(), opt.transport.tol, opt.relator_tol};
}

}  // namespace cp1lab
