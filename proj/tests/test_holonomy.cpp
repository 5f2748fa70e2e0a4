#include <doctest.h>

#include <cmath>

#include "cp1lab/holonomy.hpp"
#include "cp1lab/io.hpp"

using namespace cp1lab;

TEST_CASE("Fuchsian representation") {
    const MarkedGroup g = bolza_group();
    const Representation r = Representation::fuchsian(g);
    CHECK(r.relator_defect() < 1e-12);
    const Character ch = character_of(r);
    for (const cplx& v : ch.values) CHECK(std::abs(v.imag()) < 1e-10);
    CHECK(Character::words()[10] == commutator(Word{1}, Word{2}));
    // characters are conjugation invariant
    const MobiusMap a(cplx(1.0, 0.3), 0.5, cplx(0.0, 0.2), 1.0);
    CHECK(character_of(r.conjugated(a)).distance(ch) < 1e-8);
}

TEST_CASE("monodromy of phi = 0 is the group element") {
    const MarkedGroup g = bolza_group();
    const PhiField zero = [](cplx) { return cplx(0.0); };
    for (int i = 0; i < kGenerators; ++i) CHECK(monodromy(zero, g.gens[i], g.basepoint).psl2_distance(g.gens[i]) < 1e-9);
}

TEST_CASE("holonomy in the default basis") {
    const MarkedGroup g = bolza_group();
    const DiffBasis& b = default_basis();
    for (double n : b.normalization) CHECK(n > 0.0);
    const std::array<cplx, 3> zero{};
    const Representation r0 = holonomy_rep(g, b, zero);
    for (int i = 0; i < kGenerators; ++i) CHECK(r0.generators()[i].psl2_distance(g.gens[i]) < 1e-8);
    CHECK(r0.origin().kind == Provenance::ode_monodromy);

    const std::array<cplx, 3> c{cplx(0.1, 0.05), cplx(0.0), cplx(-0.05, 0.0)};
    const Representation r = holonomy_rep(g, b, c);
    CHECK(r.relator_defect() < 1e-6);
    CHECK(character_of(r).distance(character_of(r0)) > 1e-3);

    SUBCASE("plan replay matches direct integration") {
        const MonodromyPlan plan(g, b, c);
        CHECK(character_of(plan.at(c)).distance(character_of(r)) < 1e-8);
    }
    SUBCASE("holonomy record") {
        const json j = holonomy_record_to_json(make_record(r));
        CHECK(j["c"].size() == 3);
        CHECK(j["character"]["tr2"].size() == Character::kWords);
        CHECK(j["relator_defect"].get<double>() < 1e-6);
        CHECK(j["tolerances"]["relator"] == 1e-6);
    }
    SUBCASE("insufficient transport tolerance is reported") {
        HolonomyOptions opt;
        opt.transport.tol = 1e-2;
        opt.relator_tol = 1e-14;
        CHECK_THROWS_AS(holonomy_rep(g, b, c, opt), NumericalError);
    }
}
