#include "cp1lab/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "cp1lab/bending.hpp"
#include "cp1lab/holonomy.hpp"
#include "cp1lab/io.hpp"
#include "cp1lab/quaddiff.hpp"
#include "cp1lab/scan.hpp"
#include "cp1lab/schwarzian.hpp"

namespace cp1lab {

namespace {

using clock_type = std::chrono::steady_clock;

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// Runs body, fills timing and applies the runtime budget.
CheckResult timed(int id, const std::string& name, double budget, const std::function<void(CheckResult&)>& body) {
    CheckResult r;
    r.id = id;
    r.name = name;
    r.budget_seconds = budget;
    const auto t0 = clock_type::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
    if (budget > 0.0 && r.seconds > budget) {
        r.pass = false;
        r.detail += fmt("; runtime %.1f s exceeds %.0f s", r.seconds, budget);
    }
    return r;
}

cplx random_in_h(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const cplx w(0.6 * u(rng), 0.6 * u(rng));
    return cplx(0.0, 1.0) * (1.0 + w) / (1.0 - w);
}

AnalyticMap1D random_map(std::mt19937_64& rng, int depth) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 3);
    switch (pick(rng)) {
        case 0: {
            const cplx a(1.0 + 0.5 * u(rng), 0.5 * u(rng)), b(u(rng), u(rng)), c(0.4 * u(rng), 0.4 * u(rng));
            return AnalyticMap1D::mobius(MobiusMap(a, b, c, (1.0 + b * c) / a));
        }
        case 1: return AnalyticMap1D::exp(cplx(1.2 * u(rng), 1.2 * u(rng)));
        case 2: return AnalyticMap1D::tan();
        case 3: return AnalyticMap1D::power(cplx(1.5 + u(rng), 0.3 * u(rng)));
        default: return AnalyticMap1D::compose(random_map(rng, depth - 1), random_map(rng, depth - 1));
    }
}

bool finite_jet(const Jet3& j) {
    for (cplx v : {j.f, j.f1, j.f2, j.f3})
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > 1e6) return false;
    return std::abs(j.f1) > 1e-6;
}

// Point at hyperbolic distance d from z0 in direction theta.
cplx point_at_distance(cplx z0, double d, double theta) {
    const MobiusMap k(std::sqrt(z0.imag()), z0.real() / std::sqrt(z0.imag()), 0.0, 1.0 / std::sqrt(z0.imag()));
    const MobiusMap rot(std::cos(theta / 2.0), std::sin(theta / 2.0), -std::sin(theta / 2.0), std::cos(theta / 2.0));
    return (k * rot).apply(cplx(0.0, std::exp(d))).value();
}

std::array<cplx, 3> random_c(std::mt19937_64& rng, double radius) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<cplx, 3> c;
    double norm = 0.0;
    for (auto& x : c) {
        x = cplx(n(rng), n(rng));
        norm += std::norm(x);
    }
    const double r = radius * u(rng) / std::sqrt(norm);
    for (auto& x : c) x *= r;
    return c;
}

}  // namespace

CheckResult check_schwarzian_identities() {
    return timed(1, "Schwarzian identities", 5.0, [](CheckResult& r) {
        std::mt19937_64 rng(20240101);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double mob = 0.0;
        for (int i = 0; i < 500; ++i) {
            const cplx a(1.0 + 0.5 * u(rng), 0.5 * u(rng)), b(u(rng), u(rng)), c(0.4 * u(rng), 0.4 * u(rng));
            const auto m = AnalyticMap1D::mobius(MobiusMap(a, b, c, (1.0 + b * c) / a));
            mob = std::max(mob, std::abs(schwarzian_at(m, random_in_h(rng))));
        }
        double cocycle = 0.0;
        int probes = 0;
        while (probes < 500) {
            const AnalyticMap1D f = random_map(rng, 1), g = random_map(rng, 1);
            const cplx z(0.5 + 0.4 * u(rng), 0.6 + 0.4 * u(rng));
            const Jet3 gj = g.jet(z);
            if (!finite_jet(gj) || !finite_jet(f.jet(gj.f))) continue;
            cocycle = std::max(cocycle, cocycle_residual(f, g, z));
            ++probes;
        }
        // Independent closed form: S(exp(exp z)) = -(exp(2z) + 1) / 2.
        const cplx z0(0.3, 0.2);
        const double ee = std::abs(schwarzian_at(AnalyticMap1D::compose(AnalyticMap1D::exp(), AnalyticMap1D::exp()), z0) +
                                   0.5 * (std::exp(2.0 * z0) + 1.0));
        r.pass = mob <= 1e-10 && cocycle < 1e-8 && ee < 1e-7;
        r.detail = fmt("max |S(Mobius)| = %.2e (<= 1e-10), max cocycle residual = %.2e over %d probes (< 1e-8), "
                       "S(exp exp) closed-form error = %.2e",
                       mob, cocycle, probes, ee);
    });
}

CheckResult check_ode_inversion() {
    return timed(2, "ODE inversion", 5.0, [](CheckResult& r) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const PhiField two = [](cplx) { return cplx(2.0); };
        double dev = 0.0;
        int nodes = 0;
        for (int p = 0; p < 10; ++p) {
            const cplx z0 = random_in_h(rng);
            const cplx z1 = point_at_distance(z0, 0.5 + 1.5 * u(rng), 2.0 * std::numbers::pi * u(rng));
            const PathInH path = PathInH::geodesic(z0, z1);
            const SolutionSeed seed{std::sin(z0), std::cos(z0), std::cos(z0), -std::sin(z0)};
            for (const auto& n : develop(two, path, seed)) {
                const cplx t = std::tan(n.z);
                dev = std::max(dev, std::abs(n.f.value() - t) / (1.0 + std::abs(t)));
                ++nodes;
            }
        }
        const std::vector<PhiField> fields{
            two, [](cplx z) { return 3.0 * std::sin(z); }, [](cplx z) { return 1.0 / ((z + cplx(0.0, 2.0)) * (z + 1.0)); }};
        double drift = 0.0;
        int paths = 0;
        for (const auto& phi : fields)
            for (int p = 0; p < 10; ++p) {
                const cplx z0 = random_in_h(rng);
                const cplx z1 = point_at_distance(z0, 1.0, 2.0 * std::numbers::pi * u(rng));
                drift = std::max(drift, transport(phi, PathInH::geodesic(z0, z1)).det_drift());
                ++paths;
            }
        r.pass = dev < 1e-7 && drift < 1e-9;
        r.detail = fmt("develop(2) vs tan: max relative error %.2e over %d nodes (< 1e-7); det drift %.2e over %d "
                       "unit-length paths (< 1e-9)",
                       dev, nodes, drift, paths);
    });
}

CheckResult check_basepoint_exactness() {
    return timed(3, "Base-point exactness", 120.0, [](CheckResult& r) {
        const MarkedGroup g = bolza_group();
        const DiffBasis& b = default_basis();
        std::array<cplx, 3> zero{};
        const Representation r0 = holonomy_rep(g, b, zero);
        double base = 0.0;
        for (int i = 0; i < kGenerators; ++i) base = std::max(base, r0.generators()[i].psl2_distance(g.gens[i]));
        std::mt19937_64 rng(11);
        HolonomyOptions opt;
        opt.relator_tol = std::numeric_limits<double>::infinity();
        double worst = 0.0, max_c = 0.0;
        for (int n = 0; n < 100; ++n) {
            const auto c = random_c(rng, 0.3);
            max_c = std::max(max_c, std::sqrt(std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2])));
            worst = std::max(worst, holonomy_rep(g, b, c, opt).relator_defect());
        }
        r.pass = base <= 1e-8 && worst < 1e-6;
        r.detail = fmt("c = 0: max generator distance to rho0 (up to sign) %.2e (<= 1e-8); relator defect max %.2e "
                       "over 100 random c, |c| <= %.3f (< 1e-6); basis sup norms %.4g %.4g %.4g",
                       base, worst, max_c, b.normalization[0], b.normalization[1], b.normalization[2]);
    });
}

CheckResult check_holomorphy() {
    return timed(4, "Holomorphy of hol", 120.0, [](CheckResult& r) {
        const MarkedGroup g = bolza_group();
        const DiffBasis& b = default_basis();
        double worst_ratio = 0.0, min_d = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (cplx c0 : {cplx(0.0), cplx(0.2), cplx(0.0, 0.2)}) {
            const auto res = holomorphy_residuals(g, b, 0, c0, 1e-4);
            for (const auto& h : res) {
                min_d = std::min(min_d, h.d);
                const double ratio = h.d > 0.0 ? h.dbar / h.d : std::numeric_limits<double>::infinity();
                worst_ratio = std::max(worst_ratio, ratio);
                ok = ok && h.dbar <= 1e-3 * h.d;
            }
        }
        r.pass = ok;
        r.detail = fmt("max |dF/dcbar| / |dF/dc| = %.2e over 12 words x 3 base points (<= 1e-3); min |dF/dc| = %.3g",
                       worst_ratio, min_d);
    });
}

CheckResult check_bending_cross_validation() {
    return timed(5, "Bending cross-validation", 60.0, [](CheckResult& r) {
        const MarkedGroup g = bolza_group();
        const cplx o = default_bending_basepoint();
        const CurveSpec& sep = find_curve("sep");
        const BendingCocycle sep_cocycle(g, sep, 4);
        double agree = 0.0;
        for (double t : {0.3, 1.0, 2.0, std::numbers::pi}) {
            const Character alg = character_of(bend_amalgam(g, {sep, cplx(0.0, t)}));
            const Character coc = character_of(bend_from_cocycle(sep_cocycle, t, o));
            agree = std::max(agree, alg.distance(coc));
        }
        std::mt19937_64 rng(5);
        double cocycle = 0.0, equiv = 0.0, periodic = 0.0;
        int used = 0, skipped = 0;
        for (const auto& curve : simple_curve_catalog()) {
            const BendingCocycle bc(g, curve, 4);
            const double t = 1.3;
            for (int n = 0; n < 30; ++n) {
                const cplx x = random_in_h(rng), y = random_in_h(rng), z = random_in_h(rng);
                const MobiusMap& gamma = g.gens[static_cast<std::size_t>(n % kGenerators)];
                const auto bxy = bc(t, x, y), byz = bc(t, y, z), bxz = bc(t, x, z);
                const auto bg = bc(t, gamma.apply(x).value(), gamma.apply(y).value());
                if (!bxy.stable || !byz.stable || !bxz.stable || !bg.stable) {
                    ++skipped;
                    continue;
                }
                ++used;
                cocycle = std::max(cocycle, (bxy.value * byz.value).psl2_distance(bxz.value));
                equiv = std::max(equiv, bg.value.psl2_distance(bxy.value.conjugated_by(gamma)));
            }
            for (double t0 : {0.3, 1.0, 2.0}) {
                const Character a = character_of(bend_algebraic(g, {curve, cplx(0.0, t0)}));
                const Character a2 = character_of(bend_algebraic(g, {curve, cplx(0.0, t0 + 2.0 * std::numbers::pi)}));
                const Character c = character_of(bend_from_cocycle(bc, t0, o));
                const Character c2 = character_of(bend_from_cocycle(bc, t0 + 2.0 * std::numbers::pi, o));
                periodic = std::max({periodic, a.distance(a2), c.distance(c2)});
            }
        }
        r.pass = agree <= 1e-7 && used > 0 && cocycle <= 1e-8 && equiv <= 1e-8 && periodic <= 1e-8;
        r.detail = fmt("amalgam vs cocycle character %.2e (<= 1e-7); cocycle relation %.2e, equivariance %.2e over %d "
                       "stable triples, %d unstable skipped (<= 1e-8); 2pi-periodicity %.2e (<= 1e-8)",
                       agree, cocycle, equiv, used, skipped, periodic);
    });
}

CheckResult check_pleated_plane() {
    return timed(6, "Pleated-plane geometry", 30.0, [](CheckResult& r) {
        const MarkedGroup g = bolza_group();
        const cplx o = default_bending_basepoint();
        const double t = std::numbers::pi / 3.0;
        double coplanar = 0.0, angle = 0.0;
        for (const auto& curve : simple_curve_catalog()) {
            const BendingCocycle bc(g, curve, 4);
            const MobiusMap& towards = curve.separating ? g.gens[2] : g.gens[1];
            const PleatingCheck pc = pleating_check(bc, t, o, towards.apply(o).value());
            coplanar = std::max(coplanar, pc.coplanarity);
            angle = std::max(angle, std::abs(pc.dihedral - t));
        }
        r.pass = coplanar <= 1e-6 && angle <= 1e-4;
        r.detail = fmt("plaque coplanarity %.2e (<= 1e-6); |dihedral - pi/3| = %.2e (<= 1e-4), both catalog curves",
                       coplanar, angle);
    });
}

CheckResult check_thurston_metric() {
    return timed(7, "Thurston metric numbers", 5.0, [](CheckResult& r) {
        const double ell = bolza_systole();
        const double four_pi = 4.0 * std::numbers::pi;
        double formula = 0.0, decomposition = 0.0;
        for (double t : {0.0, 0.5, 1.0, 2.0, std::numbers::pi}) {
            const double area = grafted_area(2, t, ell);
            formula = std::max(formula, std::abs(area - (four_pi + t * ell)));
            const CylinderDecomposition cd = bolza_cylinder_decomposition(t, ell);
            decomposition = std::max(decomposition, std::abs(area - (cd.hyperbolic_area + cd.euclidean_area)));
            decomposition = std::max(decomposition, std::abs(area + total_curvature_mass(2) - cd.euclidean_area));
        }
        const double linear =
            std::abs((grafted_area(2, 2.0, ell) - grafted_area(2, 0.0, ell)) - 2.0 * (grafted_area(2, 1.0, ell) - four_pi));
        const double mass2 = std::abs(total_curvature_mass(2) + four_pi);
        const double mass3 = std::abs(total_curvature_mass(3) + 2.0 * four_pi);
        r.pass = formula <= 1e-12 && decomposition <= 1e-9 && linear <= 1e-12 && mass2 == 0.0 && mass3 == 0.0;
        r.detail = fmt("area formula error %.2e; cylinder decomposition (octagon quadrature + flat cylinder) error %.2e; "
                       "linearity in t %.2e; curvature mass genus 2 / 3 errors %.1e / %.1e; area(1) - 4pi = %.6f",
                       formula, decomposition, linear, mass2, mass3, grafted_area(2, 1.0, ell) - four_pi);
    });
}

CheckResult check_nehari_scan(const CheckOptions& opt) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = opt.workers > 0 ? opt.workers : static_cast<int>(hw);
    // The stated budget is 15 minutes on 8 workers; scale it to the cores available.
    const double budget = 900.0 * 8.0 / std::min(8u, hw);
    return timed(8, "Nehari/Bers scan", 2.0 * budget, [&](CheckResult& r) {
        ScanConfig cfg;  // 64 x 64, c in [-1.2, 1.2]^2, L = 6, basis index 0
        cfg.workers = workers;
        const ScanGrid first = run_scan(cfg);
        cfg.workers = workers == 1 ? 3 : 1;
        const ScanGrid second = run_scan(cfg);
        int inside = 0, inside_bad = 0;
        double min_violation = std::numeric_limits<double>::infinity();
        for (const auto& p : first.pixels) {
            if (std::abs(p.c) < 0.45) {
                ++inside;
                if (p.cls != PixelClass::no_violation) ++inside_bad;
            }
            if (p.cls == PixelClass::violation) min_violation = std::min(min_violation, std::abs(p.c));
        }
        const std::string ppm1 = render_ppm(first), ppm2 = render_ppm(second);
        const std::string js1 = scan_grid_to_json(first).dump(), js2 = scan_grid_to_json(second).dump();
        const bool identical = ppm1 == ppm2 && js1 == js2;
        if (!opt.artifact_dir.empty()) {
            std::filesystem::create_directories(opt.artifact_dir);
            std::ofstream(opt.artifact_dir + "/nehari_scan.ppm", std::ios::binary) << ppm1;
            std::ofstream(opt.artifact_dir + "/nehari_scan.json") << js1;
        }
        r.pass = inside > 0 && inside_bad == 0 && identical && !first.failure_budget_exceeded();
        r.detail = fmt("%d pixels with |c| < 0.45, %d not no-violation (must be 0); violations %d, failures %d of %zu; "
                       "smallest |c| with a violation %.3f; runs with %d and %d workers byte-identical: %s",
                       inside, inside_bad, first.violations(), first.failures(), first.pixels.size(), min_violation,
                       workers, cfg.workers, identical ? "yes" : "no");
    });
}

CheckResult check_dimension_echo() {
    return timed(9, "Q(X) dimension echo", 60.0, [](CheckResult& r) {
        const MarkedGroup g = bolza_group();
        std::vector<QuadDiff> series;
        for (cplx p : basis_poles()) series.push_back(poincare_diff(g, p, 8));
        for (cplx p : extra_poles()) series.push_back(poincare_diff(g, p, 8));
        const RankEstimate est = sampling_rank(series, rank_sample_points());
        std::string sv;
        for (double s : est.singular_values) sv += fmt("%s%.2e", sv.empty() ? "" : " ", s);
        r.pass = est.rank == 3;
        r.detail = fmt("%zu series at L = 8: numerical rank %d (expected 3); singular values [%s]; truncation noise "
                       "||E|| = %.2e; frontier tail estimate %.2e",
                       series.size(), est.rank, sv.c_str(), est.noise, est.max_tail);
    });
}

CheckResult check_fuchsian_limit_set() {
    return timed(10, "Fuchsian limit set reality", 30.0, [](CheckResult& r) {
        const MarkedGroup g = bolza_group();
        const LimitSetResult ls = limit_set_points(Representation::fuchsian(g), 8);
        double worst = 0.0;
        for (const auto& p : ls.points)
            if (!p.is_infinite()) worst = std::max(worst, std::abs(p.value().imag()));
        r.pass = !ls.points.empty() && ls.warning.empty() && worst < 1e-8;
        r.detail = fmt("%zu distinct points from %d loxodromic elements up to length 8; max |Im| = %.2e (< 1e-8)",
                       ls.points.size(), ls.loxodromic, worst);
    });
}

std::vector<CheckResult> run_checks(const CheckOptions& opt, const std::function<void(const CheckResult&)>& on_result) {
    const std::vector<std::function<CheckResult()>> all{
        check_schwarzian_identities, check_ode_inversion,  check_basepoint_exactness,
        check_holomorphy,            check_bending_cross_validation, check_pleated_plane,
        check_thurston_metric,       [&opt] { return check_nehari_scan(opt); }, check_dimension_echo,
        check_fuchsian_limit_set};
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        out.push_back(all[i]());
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_result(const CheckResult& r) {
    return fmt("%s [%d] %s: %s (%.1f s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(), r.seconds);
}

}  // namespace cp1lab
