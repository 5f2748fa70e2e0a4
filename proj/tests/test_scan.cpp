#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cp1lab/io.hpp"
#include "cp1lab/scan.hpp"

using namespace cp1lab;

namespace {

ScanGrid synthetic_grid(int nx, int ny, std::vector<PixelClass> classes) {
    ScanGrid g;
    g.config.nx = nx;
    g.config.ny = ny;
    for (auto c : classes) {
        PixelRecord r;
        r.cls = c;
        g.pixels.push_back(r);
    }
    return g;
}

ScanConfig golden_config() {
    ScanConfig cfg;
    cfg.nx = cfg.ny = 16;
    cfg.jorgensen_len = 4;
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("PPM of a 1x1 no-violation grid") {
    const Palette pal;
    const std::string ppm = render_ppm(synthetic_grid(1, 1, {PixelClass::no_violation}));
    CHECK(ppm.size() == 11 + 3);
    CHECK(ppm.substr(0, 11) == "P6\n1 1\n255\n");
    CHECK(static_cast<std::uint8_t>(ppm[11]) == pal.no_violation.r);
    CHECK(static_cast<std::uint8_t>(ppm[12]) == pal.no_violation.g);
    CHECK(static_cast<std::uint8_t>(ppm[13]) == pal.no_violation.b);
}

TEST_CASE("PPM payload of a 2x1 violation / no-violation grid") {
    const Palette pal;
    const std::string ppm = render_ppm(synthetic_grid(2, 1, {PixelClass::violation, PixelClass::no_violation}));
    const std::string header = "P6\n2 1\n255\n";
    REQUIRE(ppm.size() == header.size() + 6);
    const std::string payload = ppm.substr(header.size());
    const std::string expected{static_cast<char>(pal.violation.r),    static_cast<char>(pal.violation.g),
                               static_cast<char>(pal.violation.b),    static_cast<char>(pal.no_violation.r),
                               static_cast<char>(pal.no_violation.g), static_cast<char>(pal.no_violation.b)};
    CHECK(payload == expected);
    Palette custom;
    custom.violation = {1, 2, 3};
    CHECK(render_ppm(synthetic_grid(1, 1, {PixelClass::violation}), custom).substr(11) == std::string("\1\2\3"));
    CHECK(render_ppm(synthetic_grid(1, 1, {PixelClass::failure})).substr(11) ==
          std::string{static_cast<char>(pal.failure.r), static_cast<char>(pal.failure.g),
                      static_cast<char>(pal.failure.b)});
}

TEST_CASE("pixel centers: top row has the largest imaginary part") {
    ScanConfig cfg;
    cfg.nx = cfg.ny = 4;
    cfg.half_width_re = cfg.half_width_im = 1.0;
    CHECK(cfg.pixel(0, 0) == cplx(-0.75, 0.75));
    CHECK(cfg.pixel(3, 3) == cplx(0.75, -0.75));
}

TEST_CASE("Jorgensen test") {
    const MarkedGroup g = bolza_group();
    CHECK_FALSE(jorgensen_violation(Representation::fuchsian(g), 4).has_value());

    // a1 pushed towards the identity along its own axis
    auto gens = g.gens;
    const GeodesicAxis ax = axis_of(g.gens[0]);
    gens[0] = loxodromic_along_axis(ax.from, ax.to, 0.01);
    const auto w = jorgensen_violation(Representation(gens, g.relator), 2);
    REQUIRE(w.has_value());
    CHECK(w->value < 1.0);
    CHECK(w->a == Word{1});
    // elementary companions of a1 are never reported
    CHECK_FALSE(w->b == Word({1, 1}));
    CHECK_FALSE(w->b == Word{-1});
}

TEST_CASE("scan config validation and JSON") {
    CHECK_THROWS_AS(scan_config_from_json(json::parse(R"({"resolution":[0,4]})")), ConfigError);
    CHECK_THROWS_AS(scan_config_from_json(json::parse(R"({"frobnicate":1})")), ConfigError);
    CHECK_THROWS_AS(scan_config_from_json(json::parse(R"({"jorgensen_length":12})")), ConfigError);
    CHECK_THROWS_AS(scan_config_from_json(json::parse(R"({"palette":{"violation":[0,0,300]}})")), ConfigError);
    CHECK_THROWS_AS(load_scan_config("/nonexistent/cfg.json"), ConfigError);
    const ScanConfig cfg = scan_config_from_json(
        json::parse(R"({"resolution":[8,4],"half_width":0.5,"center":[0.1,-0.2],"basis_index":2})"));
    CHECK(cfg.nx == 8);
    CHECK(cfg.ny == 4);
    CHECK(cfg.half_width_im == 0.5);
    CHECK(cfg.center == cplx(0.1, -0.2));
    const ScanConfig back = scan_config_from_json(scan_config_to_json(cfg));
    CHECK(scan_config_to_json(back) == scan_config_to_json(cfg));
}

TEST_CASE("1x1 scan at the Fuchsian center") {
    ScanConfig cfg;
    cfg.nx = cfg.ny = 1;
    const ScanGrid grid = run_scan(cfg);
    REQUIRE(grid.pixels.size() == 1);
    CHECK(grid.pixels[0].c == cplx(0.0));
    CHECK(grid.pixels[0].cls == PixelClass::no_violation);
}

TEST_CASE("scan output is independent of the worker count") {
    ScanConfig cfg;
    cfg.nx = 6;
    cfg.ny = 5;
    cfg.jorgensen_len = 3;
    cfg.rows_per_block = 1;
    cfg.workers = 1;
    const ScanGrid a = run_scan(cfg);
    cfg.workers = 4;
    const ScanGrid b = run_scan(cfg);
    CHECK(render_ppm(a) == render_ppm(b));
    CHECK(scan_grid_to_json(a).dump() == scan_grid_to_json(b).dump());
    const json j = scan_grid_to_json(a);
    CHECK(j["pixels"].size() == 30);
    CHECK(j["summary"]["pixels"] == 30);
    CHECK(j["config"]["resolution"] == json::array({6, 5}));
}

TEST_CASE("16x16 golden image") {
    const std::string path = std::string(CP1LAB_GOLDEN_DIR) + "/scan16.ppm";
    const std::string ppm = render_ppm(run_scan(golden_config()));
    if (std::getenv("CP1LAB_UPDATE_GOLDEN")) std::ofstream(path, std::ios::binary) << ppm;
    const std::string golden = read_file(path);
    REQUIRE_MESSAGE(!golden.empty(), "missing golden file " << path);
    CHECK(ppm == golden);
}

TEST_CASE("limit sets") {
    const MarkedGroup g = bolza_group();
    const LimitSetResult one = limit_set_points(Representation::fuchsian(g), 1);
    CHECK(one.points.size() <= 8);
    CHECK(one.warning.empty());
    const LimitSetResult ls = limit_set_points(Representation::fuchsian(g), 4);
    for (const auto& p : ls.points)
        if (!p.is_infinite()) CHECK(std::abs(p.value().imag()) < 1e-8);
    std::ostringstream os;
    write_point_csv(os, one.points);
    CHECK(os.str().rfind("re,im\n", 0) == 0);
    CHECK_THROWS_AS(limit_set_points(Representation::fuchsian(g), 9), DomainError);

    // elliptic-dominated input
    auto gens = g.gens;
    for (auto& m : gens) m = MobiusMap::diagonal(std::exp(cplx(0.0, 0.3)));
    const LimitSetResult e = limit_set_points(Representation(gens, g.relator), 2);
    CHECK(e.points.empty());
    CHECK_FALSE(e.warning.empty());
}
