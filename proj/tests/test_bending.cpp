#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cp1lab/bending.hpp"
#include "cp1lab/io.hpp"

using namespace cp1lab;

TEST_CASE("zero bending is the Fuchsian representation") {
    const MarkedGroup g = bolza_group();
    const Character ch0 = character_of(Representation::fuchsian(g));
    for (const char* curve : {"sep", "nonsep"})
        CHECK(character_of(bend_algebraic(g, BendSpec::bending(curve, 0.0))).distance(ch0) < 1e-12);
}

TEST_CASE("algebraic bending keeps the relator and is periodic") {
    const MarkedGroup g = bolza_group();
    for (const char* curve : {"sep", "nonsep"}) {
        const Representation r = bend_algebraic(g, BendSpec::bending(curve, 1.1));
        CHECK(r.relator_defect() < 1e-10);
        const Representation r2 = bend_algebraic(g, BendSpec::bending(curve, 1.1 + 2.0 * std::numbers::pi));
        CHECK(character_of(r).distance(character_of(r2)) < 1e-9);
    }
    CHECK_THROWS_AS(bend_amalgam(g, BendSpec::bending("nonsep", 1.0)), DomainError);
}

TEST_CASE("bending cocycle basics") {
    const MarkedGroup g = bolza_group();
    const BendingCocycle bc(g, find_curve("nonsep"), 4);
    const cplx x = default_bending_basepoint();
    const auto same = bc(0.8, x, x);
    CHECK(same.stable);
    CHECK(same.value.distance_from_identity() < 1e-15);
    const cplx y = g.gens[1].apply(x).value();
    const auto b = bc(0.8, x, y);
    CHECK(b.stable);
    CHECK(b.lifts_used >= 1);
    // B(x, y) B(y, x) = I
    CHECK((b.value * bc(0.8, y, x).value).distance_from_identity() < 1e-10);
}

TEST_CASE("cocycle and algebraic constructions agree") {
    const MarkedGroup g = bolza_group();
    const Representation alg = bend_algebraic(g, BendSpec::bending("nonsep", 1.0));
    const Representation coc = bend_from_cocycle(g, find_curve("nonsep"), 1.0, default_bending_basepoint());
    CHECK(character_of(alg).distance(character_of(coc)) < 1e-7);
}

TEST_CASE("Thurston metric formulas") {
    const double ell = bolza_systole();
    CHECK(std::abs(ell - 2.0 * std::acosh(1.0 + std::sqrt(2.0))) < 1e-15);
    CHECK(grafted_area(2, 0.0, ell) == doctest::Approx(4.0 * std::numbers::pi));
    CHECK(total_curvature_mass(2) == doctest::Approx(-4.0 * std::numbers::pi));
    const auto cd = bolza_cylinder_decomposition(1.5, ell);
    CHECK(cd.euclidean_area == doctest::Approx(1.5 * ell));
    CHECK(std::abs(cd.hyperbolic_area - 4.0 * std::numbers::pi) < 1e-9);
}

TEST_CASE("bend report") {
    const BendReport r = bend_report(bolza_group(), "sep", 1.0);
    CHECK(r.stable);
    CHECK(r.agreement_residual < 1e-7);
    CHECK(r.periodicity_residual < 1e-8);
    const json j = bend_report_to_json(r);
    for (const char* k : {"curve", "t", "character", "periodicity_residual", "agreement_residual"})
        CHECK(j.contains(k));
    CHECK(j["curve"] == "sep");
}
