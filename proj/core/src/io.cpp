#include "cp1lab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace cp1lab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

double number(const json& j, const std::string& what) {
    if (!j.is_number()) bad(what + ": expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& what) {
    if (!j.is_number_integer()) bad(what + ": expected an integer");
    return j.get<int>();
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json rgb_to_json(const Rgb& c) { return json::array({c.r, c.g, c.b}); }

Rgb rgb_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) bad(what + ": expected [r, g, b]");
    std::array<std::uint8_t, 3> v{};
    for (int i = 0; i < 3; ++i) {
        const int x = integer(j[static_cast<std::size_t>(i)], what);
        if (x < 0 || x > 255) bad(what + ": channel out of range");
        v[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x);
    }
    return {v[0], v[1], v[2]};
}

json witness_to_json(const JorgensenWitness& w) {
    return {{"a", word_to_json(w.a)}, {"b", word_to_json(w.b)}, {"value", w.value}};
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) bad("complex number: expected [re, im]");
    return {number(j[0], "complex re"), number(j[1], "complex im")};
}

json mobius_to_json(const MobiusMap& m) {
    return {{"a", complex_to_json(m.a())},
            {"b", complex_to_json(m.b())},
            {"c", complex_to_json(m.c())},
            {"d", complex_to_json(m.d())}};
}

MobiusMap mobius_from_json(const json& j) {
    if (!j.is_object()) bad("MobiusMap: expected an object with a, b, c, d");
    for (const char* k : {"a", "b", "c", "d"})
        if (!j.contains(k)) bad(std::string("MobiusMap: missing entry ") + k);
    const cplx a = complex_from_json(j["a"]), b = complex_from_json(j["b"]);
    const cplx c = complex_from_json(j["c"]), d = complex_from_json(j["d"]);
    const double scale = std::max({1.0, std::norm(a), std::norm(b), std::norm(c), std::norm(d)});
    if (std::abs(a * d - b * c - 1.0) > 1e-9 * scale) bad("MobiusMap: determinant is not 1");
    return MobiusMap(a, b, c, d);
}

json word_to_json(const Word& w) { return w.letters(); }

Word word_from_json(const json& j) {
    if (!j.is_array()) bad("Word: expected an array of signed generator indices");
    std::vector<int> letters;
    for (const auto& x : j) {
        const int v = integer(x, "Word letter");
        if (v == 0 || std::abs(v) > kGenerators) bad("Word: letters must be +-1..+-4");
        letters.push_back(v);
    }
    return Word(std::move(letters));
}

json group_to_json(const MarkedGroup& g) {
    json gens = json::array();
    for (const auto& m : g.gens) gens.push_back(mobius_to_json(m));
    return {{"generators", gens}, {"relator", word_to_json(g.relator)}, {"basepoint", complex_to_json(g.basepoint)}};
}

MarkedGroup group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("generators") || !j.contains("relator"))
        bad("MarkedGroup: expected generators and relator");
    const json& gens = j["generators"];
    if (!gens.is_array() || gens.size() != kGenerators) bad("MarkedGroup: expected 4 generators");
    MarkedGroup g;
    for (int i = 0; i < kGenerators; ++i) g.gens[i] = mobius_from_json(gens[static_cast<std::size_t>(i)]);
    g.relator = word_from_json(j["relator"]);
    if (j.contains("basepoint")) g.basepoint = complex_from_json(j["basepoint"]);
    if (!(g.basepoint.imag() > 0.0)) bad("MarkedGroup: basepoint must lie in H");
    return g;
}

json quaddiff_to_json(const QuadDiff& q) {
    json poles = json::array(), coeffs = json::array();
    for (const auto& t : q.terms()) {
        poles.push_back(complex_to_json(t.pole));
        coeffs.push_back(complex_to_json(t.coeff));
    }
    return {{"poles", poles}, {"coefficients", coeffs}, {"L", q.truncation_len()}};
}

QuadDiff quaddiff_from_json(const json& j, const MarkedGroup& g) {
    if (!j.is_object() || !j.contains("poles") || !j.contains("coefficients") || !j.contains("L"))
        bad("QuadDiff: expected poles, coefficients and L");
    const json& p = j["poles"];
    const json& c = j["coefficients"];
    if (!p.is_array() || !c.is_array() || p.size() != c.size()) bad("QuadDiff: poles and coefficients must match");
    std::vector<PoleTerm> terms;
    for (std::size_t i = 0; i < p.size(); ++i) terms.push_back({complex_from_json(p[i]), complex_from_json(c[i])});
    const int L = integer(j["L"], "QuadDiff L");
    if (L < 0 || L > 8) bad("QuadDiff: L must be in [0, 8]");
    try {
        return QuadDiff(g, std::move(terms), L);
    } catch (const DomainError& e) {
        bad(std::string("QuadDiff: ") + e.what());
    }
}

json character_to_json(const Character& ch) {
    json words = json::array(), values = json::array();
    for (int i = 0; i < Character::kWords; ++i) {
        words.push_back(Character::words()[i].to_string());
        values.push_back(complex_to_json(ch.values[i]));
    }
    return {{"words", words}, {"tr2", values}};
}

json holonomy_record_to_json(const HolonomyRecord& r) {
    json c = json::array();
    for (const auto& x : r.c) c.push_back(complex_to_json(x));
    return {{"c", c},
            {"character", character_to_json(r.character)},
            {"relator_defect", r.relator_defect},
            {"tolerances", {{"transport", r.transport_tol}, {"relator", r.relator_tol}}}};
}

json scan_config_to_json(const ScanConfig& cfg) {
    return {{"basis_index", cfg.basis_index},
            {"center", complex_to_json(cfg.center)},
            {"half_width", json::array({cfg.half_width_re, cfg.half_width_im})},
            {"resolution", json::array({cfg.nx, cfg.ny})},
            {"jorgensen_length", cfg.jorgensen_len},
            {"margin", cfg.margin},
            {"ode_tol", cfg.ode_tol},
            {"relator_tol", cfg.relator_tol},
            {"failure_budget", cfg.failure_budget},
            {"basis_length", cfg.basis_len},
            {"output", {{"ppm", cfg.ppm_path}, {"json", cfg.json_path}}},
            {"palette",
             {{"violation", rgb_to_json(cfg.palette.violation)},
              {"no_violation", rgb_to_json(cfg.palette.no_violation)},
              {"failure", rgb_to_json(cfg.palette.failure)}}}};
}

ScanConfig scan_config_from_json(const json& j) {
    if (!j.is_object()) bad("scan config: expected a JSON object");
    static const std::set<std::string> known{"basis_index", "center",        "half_width",   "resolution",
                                             "jorgensen_length", "margin",   "ode_tol",      "relator_tol",
                                             "failure_budget", "basis_length", "workers",    "rows_per_block",
                                             "output",       "palette"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) bad("scan config: unknown key '" + k + "'");
    ScanConfig cfg;
    if (j.contains("basis_index")) cfg.basis_index = integer(j["basis_index"], "basis_index");
    if (j.contains("center")) cfg.center = complex_from_json(j["center"]);
    if (j.contains("half_width")) {
        const json& h = j["half_width"];
        if (h.is_number()) {
            cfg.half_width_re = cfg.half_width_im = h.get<double>();
        } else {
            if (!h.is_array() || h.size() != 2) bad("half_width: expected a number or [re, im]");
            cfg.half_width_re = number(h[0], "half_width");
            cfg.half_width_im = number(h[1], "half_width");
        }
    }
    if (j.contains("resolution")) {
        const json& r = j["resolution"];
        if (!r.is_array() || r.size() != 2) bad("resolution: expected [nx, ny]");
        cfg.nx = integer(r[0], "resolution");
        cfg.ny = integer(r[1], "resolution");
    }
    if (j.contains("jorgensen_length")) cfg.jorgensen_len = integer(j["jorgensen_length"], "jorgensen_length");
    if (j.contains("margin")) cfg.margin = number(j["margin"], "margin");
    if (j.contains("ode_tol")) cfg.ode_tol = number(j["ode_tol"], "ode_tol");
    if (j.contains("relator_tol")) cfg.relator_tol = number(j["relator_tol"], "relator_tol");
    if (j.contains("failure_budget")) cfg.failure_budget = number(j["failure_budget"], "failure_budget");
    if (j.contains("basis_length")) cfg.basis_len = integer(j["basis_length"], "basis_length");
    if (j.contains("workers")) cfg.workers = integer(j["workers"], "workers");
    if (j.contains("rows_per_block")) cfg.rows_per_block = integer(j["rows_per_block"], "rows_per_block");
    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object()) bad("output: expected an object");
        for (const auto& [k, v] : o.items()) {
            if (!v.is_string()) bad("output." + k + ": expected a path string");
            if (k == "ppm")
                cfg.ppm_path = v.get<std::string>();
            else if (k == "json")
                cfg.json_path = v.get<std::string>();
            else
                bad("output: unknown key '" + k + "'");
        }
    }
    if (j.contains("palette")) {
        const json& p = j["palette"];
        if (!p.is_object()) bad("palette: expected an object");
        for (const auto& [k, v] : p.items()) {
            if (k == "violation")
                cfg.palette.violation = rgb_from_json(v, "palette.violation");
            else if (k == "no_violation")
                cfg.palette.no_violation = rgb_from_json(v, "palette.no_violation");
            else if (k == "failure")
                cfg.palette.failure = rgb_from_json(v, "palette.failure");
            else
                bad("palette: unknown key '" + k + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ScanConfig load_scan_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        bad("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return scan_config_from_json(j);
}

json scan_grid_to_json(const ScanGrid& grid) {
    json pixels = json::array();
    for (const auto& p : grid.pixels) {
        json rec = {{"c", complex_to_json(p.c)},
                    {"class", to_string(p.cls)},
                    {"character_hash", hex64(p.character_hash)},
                    {"relator_defect", p.relator_defect}};
        rec["witness"] = p.witness ? witness_to_json(*p.witness) : json(nullptr);
        if (!p.failure.empty()) rec["failure"] = p.failure;
        pixels.push_back(std::move(rec));
    }
    const int n = static_cast<int>(grid.pixels.size());
    return {{"config", scan_config_to_json(grid.config)},
            {"pixels", pixels},
            {"summary",
             {{"pixels", n},
              {"violations", grid.violations()},
              {"failures", grid.failures()},
              {"no_violations", n - grid.violations() - grid.failures()}}}};
}

json bend_report_to_json(const BendReport& r) {
    return {{"curve", r.curve},
            {"t", r.t},
            {"character", character_to_json(r.character)},
            {"periodicity_residual", r.periodicity_residual},
            {"agreement_residual", std::isfinite(r.agreement_residual) ? json(r.agreement_residual) : json(nullptr)},
            {"relator_defect", r.relator_defect},
            {"cocycle_stable", r.stable}};
}

}  // namespace cp1lab
