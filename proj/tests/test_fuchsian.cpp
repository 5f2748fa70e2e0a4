#include <doctest.h>

#include <cmath>

#include "cp1lab/fuchsian.hpp"
#include "cp1lab/hyperbolic.hpp"
#include "cp1lab/io.hpp"

using namespace cp1lab;

TEST_CASE("words reduce freely and invert") {
    const Word w{1, 2, -2, 3};
    CHECK(w == Word({1, 3}));
    CHECK(w * w.inverse() == Word{});
    CHECK(Word::parse("a1 b1 A1 B1") == commutator(Word{1}, Word{2}));
    CHECK(Word{1, -2}.to_string() == "a1 B1");
    CHECK_THROWS_AS(Word({5}), DomainError);
}

TEST_CASE("Bolza generators are real and satisfy the relator") {
    const MarkedGroup g = bolza_group();
    for (const auto& m : g.gens) {
        CHECK(m.is_real());
        CHECK(classify(m).kind == MobiusKind::loxodromic);
    }
    CHECK(g.relator == commutator(Word{1}, Word{2}) * commutator(Word{3}, Word{4}));
    CHECK(evaluate_word(g, g.relator).distance_from_identity() < 1e-12);
    // rotated relators are relators as well
    for (std::size_t k = 0; k < g.relator.size(); ++k)
        CHECK(evaluate_word(g, g.relator.rotated(k)).distance_from_identity() < 1e-12);
}

TEST_CASE("systole of the Bolza surface") {
    const MarkedGroup g = bolza_group();
    const double systole = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
    CHECK(std::abs(geodesic_length(g, Word{1}) - systole) < 1e-12);
    // conjugation invariance
    CHECK(std::abs(geodesic_length(g, Word{2, 1, -2}) - geodesic_length(g, Word{1})) < 1e-12);
}

TEST_CASE("element enumeration sizes and ordering") {
    const MarkedGroup g = bolza_group();
    const ElementTable t = enumerate_elements(g, 4);
    CHECK(t.size() == 3193);
    CHECK(t.sphere(0) == std::pair<std::size_t, std::size_t>(0, 1));
    CHECK(t.sphere(1).second - t.sphere(1).first == 8);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t.length(i) >= t.length(i - 1));
    for (std::size_t i : {std::size_t(5), std::size_t(100), std::size_t(3000)})
        CHECK(t.matrix(i).psl2_distance(evaluate_word(g, t.word(i))) < 1e-9);
    CHECK(bolza_elements(4)->size() == 3193);
}

TEST_CASE("elementary pairs") {
    const MarkedGroup g = bolza_group();
    CHECK(is_elementary_pair(g.gens[0], g.gens[0] * g.gens[0]));
    CHECK_FALSE(is_elementary_pair(g.gens[0], g.gens[1]));
}

TEST_CASE("separating lifts of a1 between distant points") {
    const MarkedGroup g = bolza_group();
    const cplx x(0.05, 1.1), y = g.gens[1].apply(x).value();
    const auto lifts = separating_lifts(g, Word{1}, x, y, 4);
    REQUIRE(!lifts.empty());
    for (std::size_t i = 1; i < lifts.size(); ++i) CHECK(lifts[i].crossing >= lifts[i - 1].crossing);
    for (const auto& l : lifts) CHECK(side_of_geodesic(l.axis.from, l.axis.to, y) > 0.0);
    // the point itself is separated from nothing
    CHECK(separating_lifts(g, Word{1}, x, x, 4).empty());
}

TEST_CASE("curve catalog") {
    CHECK(find_curve("sep").separating);
    CHECK_FALSE(find_curve("nonsep").separating);
    CHECK(find_curve("nonsep").word == Word{1});
    CHECK_THROWS_AS(find_curve("nope"), DomainError);
}

TEST_CASE("MarkedGroup JSON round trip") {
    const MarkedGroup g = bolza_group();
    const json j = group_to_json(g);
    CHECK(j["relator"].is_array());
    CHECK(j["relator"][0] == 1);
    const MarkedGroup h = group_from_json(j);
    CHECK(h.relator == g.relator);
    for (int i = 0; i < kGenerators; ++i) CHECK(h.gens[i].psl2_distance(g.gens[i]) < 1e-15);
    json bad = j;
    bad["relator"] = json::array({1, 7});
    CHECK_THROWS_AS(group_from_json(bad), ConfigError);
}
