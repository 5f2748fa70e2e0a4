#include <doctest.h>

#include <cmath>
#include <random>

#include "cp1lab/hyperbolic.hpp"
#include "cp1lab/io.hpp"
#include "cp1lab/moebius.hpp"

using namespace cp1lab;

namespace {

MobiusMap random_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        const cplx a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng)), d(u(rng), u(rng));
        if (std::abs(a * d - b * c) > 0.1) return MobiusMap(a, b, c, d);
    }
}

}  // namespace

TEST_CASE("constructor normalizes the determinant") {
    const MobiusMap m(2.0, 1.0, 3.0, 4.0);
    CHECK(std::abs(m.det() - 1.0) < 1e-12);
    CHECK_THROWS_AS(MobiusMap(1.0, 2.0, 2.0, 4.0), DomainError);
}

TEST_CASE("composition is associative and keeps det 1") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const MobiusMap x = random_map(rng), y = random_map(rng), z = random_map(rng);
        const MobiusMap l = (x * y) * z, r = x * (y * z);
        CHECK(l.psl2_distance(r) < 1e-10 * std::max(1.0, l.max_abs_entry()));
        CHECK(std::abs(l.det() - 1.0) < 1e-12);
    }
}

TEST_CASE("composition applies the right factor first") {
    const MobiusMap t(1.0, 1.0, 0.0, 1.0), s(0.0, -1.0, 1.0, 0.0);
    const cplx z(0.3, 0.7);
    CHECK(std::abs((t * s).apply(z).value() - t.apply(s.apply(z)).value()) < 1e-14);
}

TEST_CASE("infinity is handled projectively") {
    const MobiusMap m(2.0, 1.0, 1.0, 1.0);
    CHECK(std::abs(m.apply(ComplexPoint::infinity()).value() - 2.0) < 1e-14);
    CHECK(m.apply(ComplexPoint::finite(-1.0)).is_infinite());
    CHECK_THROWS(ComplexPoint::infinity().value());
    CHECK(ComplexPoint(2.0, 4.0).approx_equal(ComplexPoint::finite(0.5)));
}

TEST_CASE("classification by trace squared") {
    CHECK(classify(MobiusMap{}).kind == MobiusKind::identity);
    CHECK(classify(MobiusMap{}.negated()).kind == MobiusKind::identity);
    CHECK(classify(MobiusMap(1.0, 1.0, 0.0, 1.0)).kind == MobiusKind::parabolic);
    CHECK(classify(MobiusMap::diagonal(std::exp(cplx(0.0, 0.4)))).kind == MobiusKind::elliptic);
    CHECK(classify(MobiusMap::diagonal(2.0)).kind == MobiusKind::loxodromic);
    CHECK(classify(MobiusMap::diagonal(cplx(1.5, 1.0))).kind == MobiusKind::loxodromic);
}

TEST_CASE("fixed points are fixed and the attracting one attracts") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 50; ++i) {
        const MobiusMap m = random_map(rng);
        if (classify(m).kind != MobiusKind::loxodromic) continue;
        for (const auto& p : fixed_points(m)) CHECK(m.apply(p).approx_equal(p, 1e-8));
        const auto ax = loxodromic_fixed_points(m);
        ComplexPoint z = ComplexPoint::finite(cplx(0.123, 0.456));
        for (int k = 0; k < 5000; ++k) z = m.apply(z).normalized();
        CHECK(z.chordal_distance(ax.attracting) < 1e-6);
    }
}

TEST_CASE("elliptic about an axis fixes its endpoints and rotates by t") {
    const ComplexPoint p = ComplexPoint::finite(-1.0), q = ComplexPoint::finite(2.0);
    const MobiusMap e = elliptic_about_axis(p, q, 0.7);
    CHECK(e.apply(p).approx_equal(p));
    CHECK(e.apply(q).approx_equal(q));
    CHECK(std::abs(e.trace_squared() - 4.0 * std::cos(0.35) * std::cos(0.35)) < 1e-12);
    CHECK(elliptic_about_axis(p, q, 2.0 * M_PI).distance_from_identity() < 1e-12);
}

TEST_CASE("Cayley transforms are inverse and preserve distance") {
    const MobiusMap c = disk_to_half_plane(), ci = half_plane_to_disk();
    CHECK((c * ci).distance_from_identity() < 1e-14);
    const cplx z(0.2, 1.3), w(-0.5, 0.4);
    const MobiusMap m(2.0, 1.0, 1.0, 1.0);
    CHECK(std::abs(hyperbolic_distance(z, w) - hyperbolic_distance(m.apply(z).value(), m.apply(w).value())) < 1e-12);
}

TEST_CASE("Poincare extension preserves hyperbolic distance in H^3") {
    std::mt19937_64 rng(3);
    const SpacePoint p{cplx(0.1, 0.2), 0.7}, q{cplx(-0.4, 0.5), 1.9};
    for (int i = 0; i < 20; ++i) {
        const MobiusMap m = random_map(rng);
        CHECK(std::abs(hyperbolic_distance(apply(m, p), apply(m, q)) - hyperbolic_distance(p, q)) < 1e-8);
    }
}

TEST_CASE("MobiusMap JSON round trip and determinant check on load") {
    const MobiusMap m(cplx(1.0, 0.5), 2.0, cplx(0.0, 1.0), 3.0);
    const json j = mobius_to_json(m);
    CHECK(j["a"].size() == 2);
    CHECK(mobius_from_json(j).sl2_distance(m) < 1e-15);
    json bad = j;
    bad["d"] = json::array({5.0, 0.0});
    CHECK_THROWS_AS(mobius_from_json(bad), ConfigError);
    CHECK_THROWS_AS(mobius_from_json(json::parse(R"({"a":[1,0],"b":[0,0],"c":[0,0]})")), ConfigError);
}
