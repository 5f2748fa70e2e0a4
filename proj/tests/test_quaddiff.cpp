#include <doctest.h>

#include <cmath>

#include "cp1lab/automorphic.hpp"
#include "cp1lab/io.hpp"
#include "cp1lab/quaddiff.hpp"

using namespace cp1lab;

TEST_CASE("poles must lie below the real axis") {
    CHECK_THROWS_AS(poincare_diff(bolza_group(), cplx(0.0, 1.0), 2), DomainError);
}

TEST_CASE("truncated series is holomorphic and approximately invariant") {
    const MarkedGroup g = bolza_group();
    const QuadDiff q = poincare_diff(g, basis_poles()[0], 6);
    const cplx z(0.1, 0.9);
    CHECK(cauchy_riemann_residual(q, z) < 1e-6 * (1.0 + std::abs(q(z))));
    const auto samples = default_equivariance_samples(g, 6);
    const double r6 = equivariance_residual(q, samples);
    const double r2 = equivariance_residual(poincare_diff(g, basis_poles()[0], 2), samples);
    CHECK(r6 < r2);
    CHECK(r6 < 1e-2);
}

TEST_CASE("batch evaluation matches pointwise evaluation") {
    const QuadDiff q = poincare_diff(bolza_group(), basis_poles()[1], 4, cplx(0.5, 0.5));
    const std::vector<cplx> zs{cplx(0.0, 1.0), cplx(0.3, 0.8), cplx(-0.2, 1.5)};
    const auto v = q.evaluate(zs);
    for (std::size_t i = 0; i < zs.size(); ++i) CHECK(std::abs(v[i] - q(zs[i])) < 1e-12 * (1.0 + std::abs(v[i])));
}

TEST_CASE("completed differentials are exactly invariant") {
    const MarkedGroup g = bolza_group();
    const AutomorphicBasis& b = AutomorphicBasis::bolza();
    CHECK(b.null_residual() < 1e-8);
    const auto samples = default_equivariance_samples(g, 10);
    for (int j = 0; j < 3; ++j) {
        std::array<cplx, 3> e{};
        e[static_cast<std::size_t>(j)] = 1.0;
        const CompletedDiff d(&b, e);
        CHECK(equivariance_residual(d, samples) < 1e-9);
    }
    const auto gram = b.gram();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(gram[i][j] - (i == j ? 1.0 : 0.0)) < 1e-6);
}

TEST_CASE("sup norm is invariant under scaling") {
    const QuadDiff q = poincare_diff(bolza_group(), basis_poles()[0], 3);
    const auto pts = octagon_samples(0.1);
    const double s1 = sup_norm(q, pts, 0.1).value;
    const double s2 = sup_norm(q.scaled(cplx(0.0, 2.0)), pts, 0.1).value;
    CHECK(std::abs(s2 - 2.0 * s1) < 1e-12 * s1);
}

TEST_CASE("QuadDiff JSON round trip") {
    const MarkedGroup g = bolza_group();
    const QuadDiff q = poincare_diff(g, basis_poles()[2], 3, cplx(1.0, -2.0));
    const json j = quaddiff_to_json(q);
    CHECK(j["L"] == 3);
    CHECK(j["poles"].size() == 1);
    const QuadDiff r = quaddiff_from_json(j, g);
    CHECK(r(cplx(0.1, 1.0)) == q(cplx(0.1, 1.0)));
    json bad = j;
    bad["poles"][0] = json::array({0.0, 1.0});
    CHECK_THROWS_AS(quaddiff_from_json(bad, g), ConfigError);
}

TEST_CASE("sampling rank sees repeated series") {
    const MarkedGroup g = bolza_group();
    const QuadDiff q = poincare_diff(g, basis_poles()[0], 4);
    const RankEstimate est = sampling_rank({q, q.scaled(cplx(0.0, 3.0))}, rank_sample_points());
    CHECK(est.singular_values.size() == 2);
    CHECK(est.rank == 1);
}
