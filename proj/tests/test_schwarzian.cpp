#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cp1lab/schwarzian.hpp"

using namespace cp1lab;

TEST_CASE("closed-form Schwarzians") {
    const cplx z(0.3, 0.4);
    CHECK(std::abs(schwarzian_at(AnalyticMap1D::tan(), z) - 2.0) < 1e-12);
    const cplx k(0.7, -0.2);
    CHECK(std::abs(schwarzian_at(AnalyticMap1D::exp(k), z) + 0.5 * k * k) < 1e-12);
    const cplx p(2.5, 0.0);
    CHECK(std::abs(schwarzian_at(AnalyticMap1D::power(p), z) - (1.0 - p * p) / (2.0 * z * z)) < 1e-12);
    CHECK(std::abs(schwarzian_at(AnalyticMap1D::mobius(MobiusMap(1.0, 2.0, 3.0, 7.0)), z)) < 1e-12);
}

TEST_CASE("numeric family agrees with the analytic one") {
    const auto num = AnalyticMap1D::numeric("tan", [](cplx z) { return std::tan(z); });
    const cplx z(0.2, 0.3);
    CHECK(std::abs(schwarzian_at(num, z) - 2.0) < 1e-6);
}

TEST_CASE("chain rule composition satisfies the cocycle") {
    const auto f = AnalyticMap1D::tan(), g = AnalyticMap1D::exp(cplx(0.5, 0.1));
    CHECK(cocycle_residual(f, g, cplx(0.1, 0.2)) < 1e-10);
    // post-composition with a Moebius map leaves S unchanged
    const auto m = AnalyticMap1D::mobius(MobiusMap(2.0, 1.0, 1.0, 1.0));
    const cplx z(0.3, 0.1);
    CHECK(std::abs(schwarzian_at(AnalyticMap1D::compose(m, f), z) - schwarzian_at(f, z)) < 1e-10);
}

TEST_CASE("critical point is a domain error") {
    CHECK_THROWS_AS(schwarzian_at(AnalyticMap1D::power(2.0), 0.0), DomainError);
}

TEST_CASE("paths") {
    const PathInH p = PathInH::geodesic(cplx(0.0, 1.0), cplx(0.0, std::exp(1.0)));
    CHECK(std::abs(p.length() - 1.0) < 1e-12);
    CHECK(std::abs(p.point(0.5) - cplx(0.0, std::exp(0.5))) < 1e-12);
    CHECK(p.nodes().front() == 0.0);
    CHECK(p.nodes().back() == 1.0);
}

TEST_CASE("transport of phi = 0 is the shear") {
    const PathInH p = PathInH::straight(cplx(0.0, 1.0), cplx(1.0, 1.0));
    const TransportMatrix t = transport([](cplx) { return cplx(0.0); }, p);
    CHECK(std::abs(t.T.m00 - 1.0) < 1e-14);
    CHECK(std::abs(t.T.m01 - 1.0) < 1e-14);
    CHECK(std::abs(t.T.m10) < 1e-14);
    CHECK(std::abs(t.T.m11 - 1.0) < 1e-14);
}

TEST_CASE("two integrators agree") {
    const PhiField phi = [](cplx z) { return 3.0 * std::sin(z); };
    const PathInH p = PathInH::geodesic(cplx(0.1, 0.8), cplx(0.6, 1.4));
    const Mat2 t = transport(phi, p).T;
    const Mat2 m = transport_osculating(phi, p);
    CHECK(m.distance(t.transposed() * osculation_frame(p.end())) < 1e-9);
}

TEST_CASE("transport plan replay reproduces direct transport") {
    const TransportPlan::MultiField fields = [](cplx z, std::span<cplx> out) {
        out[0] = 1.0;
        out[1] = z;
    };
    const PathInH p = PathInH::geodesic(cplx(0.0, 1.0), cplx(0.5, 2.0));
    const std::array<cplx, 2> design{cplx(1.0), cplx(1.0)};
    const TransportPlan plan = TransportPlan::build(fields, 2, p, design);
    const std::array<cplx, 2> c{cplx(0.3, 0.1), cplx(-0.2, 0.4)};
    const Mat2 direct = transport([&](cplx z) { return c[0] + c[1] * z; }, p).T;
    CHECK(plan.replay(c).distance(direct) < 1e-8);
}

TEST_CASE("developing map of phi = 2 is tan") {
    const PathInH p = PathInH::geodesic(cplx(0.1, 0.5), cplx(0.4, 0.9));
    const cplx z0 = p.start();
    const SolutionSeed seed{std::sin(z0), std::cos(z0), std::cos(z0), -std::sin(z0)};
    const auto nodes = develop([](cplx) { return cplx(2.0); }, p, seed);
    REQUIRE(nodes.size() == p.nodes().size());
    for (const auto& n : nodes) CHECK(std::abs(n.f.value() - std::tan(n.z)) < 1e-9);
    CHECK_THROWS_AS(develop([](cplx) { return cplx(2.0); }, p, SolutionSeed{1.0, 0.0, 0.0, 2.0}), DomainError);
    std::ostringstream os;
    write_develop_csv(os, nodes);
    CHECK(os.str().rfind("node,s,re_z,im_z,re_u1,im_u1,re_u2,im_u2,re_f,im_f\n", 0) == 0);
}
