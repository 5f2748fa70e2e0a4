#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cp1lab/bending.hpp"
#include "cp1lab/checks.hpp"
#include "cp1lab/holonomy.hpp"
#include "cp1lab/io.hpp"
#include "cp1lab/scan.hpp"

using namespace cp1lab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

/// "RE,IM,RE,IM,..." with at most three pairs; missing coefficients are zero.
std::array<cplx, 3> parse_coefficients(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("--c: '" + item + "' is not a number");
        }
    }
    if (v.empty() || v.size() % 2 != 0 || v.size() > 6)
        throw ConfigError("--c: expected RE,IM pairs for one to three basis coefficients");
    std::array<cplx, 3> c{};
    for (std::size_t i = 0; i < v.size() / 2; ++i) c[i] = cplx(v[2 * i], v[2 * i + 1]);
    return c;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << bytes;
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cp1lab: projective structures on the Bolza surface"};
    app.require_subcommand(1);

    auto* scan = app.add_subcommand("scan", "Discreteness scan of the slice {c phi_k}");
    std::string config_path, ppm_path, json_path;
    int workers = -1;
    bool quiet = false;
    scan->add_option("--config", config_path, "Scan configuration (JSON)")->required();
    scan->add_option("--ppm", ppm_path, "Image output, overrides output.ppm");
    scan->add_option("--json", json_path, "Sidecar output, overrides output.json");
    scan->add_option("--workers", workers, "Worker threads, overrides the config (0 = all cores)");
    scan->add_flag("--quiet", quiet, "No progress output");

    auto* bend = app.add_subcommand("bend", "Bending report for a catalog curve");
    std::string curve = "sep";
    double t = 1.0;
    int cutoff = 4;
    bend->add_option("--curve", curve, "sep ([a1,b1]) or nonsep (a1)");
    bend->add_option("--t", t, "Bending angle");
    bend->add_option("--cutoff", cutoff, "Word-length cutoff of the lift enumeration");

    auto* hol = app.add_subcommand("holonomy", "Holonomy record of the structure c . phi");
    std::string c_text;
    double ode_tol = 1e-10, relator_tol = 1e-6;
    hol->add_option("--c", c_text, "Basis coefficients RE,IM[,RE,IM[,RE,IM]]")->required();
    hol->add_option("--ode-tol", ode_tol, "Transport tolerance");
    hol->add_option("--relator-tol", relator_tol, "Allowed relator defect");

    auto* check = app.add_subcommand("check", "Run the acceptance property suite");
    std::vector<int> only;
    std::string artifacts;
    int check_workers = 0;
    check->add_option("--only", only, "Criterion numbers to run")->delimiter(',');
    check->add_option("--artifacts", artifacts, "Directory for scan artifacts");
    check->add_option("--workers", check_workers, "Scan worker threads (0 = all cores)");

    auto* limset = app.add_subcommand("limset", "Limit set point cloud (CSV)");
    std::string lim_c, lim_curve, out_path;
    double lim_t = 0.0;
    int len = 8;
    limset->add_option("--c", lim_c, "Basis coefficients RE,IM,... of the structure");
    limset->add_option("--curve", lim_curve, "Use a bending of this curve instead of --c");
    limset->add_option("--t", lim_t, "Bending angle with --curve");
    limset->add_option("--len", len, "Maximum word length (1..8)");
    limset->add_option("--out", out_path, "CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (*scan) {
        return guarded([&] {
            ScanConfig cfg = load_scan_config(config_path);
            if (workers >= 0) cfg.workers = workers;
            if (!ppm_path.empty()) cfg.ppm_path = ppm_path;
            if (!json_path.empty()) cfg.json_path = json_path;
            if (cfg.ppm_path.empty()) cfg.ppm_path = "scan.ppm";
            if (cfg.json_path.empty()) cfg.json_path = "scan.json";
            cfg.validate();
            const ScanGrid grid = run_scan(cfg, [&](int done, int total) {
                if (!quiet) std::fprintf(stderr, "\rrows %d/%d", done, total);
            });
            if (!quiet) std::fprintf(stderr, "\n");
            write_file(cfg.ppm_path, render_ppm(grid));
            write_file(cfg.json_path, scan_grid_to_json(grid).dump(1) + "\n");
            const int n = static_cast<int>(grid.pixels.size());
            std::printf("pixels %d  violation %d  no-violation (possibly discrete) %d  integration-failure %d\n", n,
                        grid.violations(), n - grid.violations() - grid.failures(), grid.failures());
            std::printf("wrote %s and %s\n", cfg.ppm_path.c_str(), cfg.json_path.c_str());
            if (grid.failure_budget_exceeded()) {
                std::fprintf(stderr, "integration failures exceed %.1f%% of the pixels\n", 100.0 * cfg.failure_budget);
                return kExitNumerical;
            }
            return kExitOk;
        });
    }

    if (*bend) {
        return guarded([&] {
            const BendReport r = bend_report(bolza_group(), curve, t, cutoff);
            std::cout << bend_report_to_json(r).dump(2) << '\n';
            return kExitOk;
        });
    }

    if (*hol) {
        return guarded([&] {
            const auto c = parse_coefficients(c_text);
            HolonomyOptions opt;
            opt.transport.tol = ode_tol;
            opt.relator_tol = relator_tol;
            const Representation r = holonomy_rep(bolza_group(), default_basis(), c, opt);
            std::cout << holonomy_record_to_json(make_record(r, opt)).dump(2) << '\n';
            return kExitOk;
        });
    }

    if (*check) {
        return guarded([&] {
            CheckOptions opt;
            opt.only = only;
            opt.artifact_dir = artifacts;
            opt.workers = check_workers;
            bool all = true;
            run_checks(opt, [&](const CheckResult& r) {
                all = all && r.pass;
                std::cout << format_result(r) << std::endl;
            });
            return all ? kExitOk : kExitFailed;
        });
    }

    if (*limset) {
        return guarded([&] {
            const MarkedGroup g = bolza_group();
            Representation r;
            if (!lim_curve.empty()) {
                if (!lim_c.empty()) throw ConfigError("limset: use either --c or --curve");
                r = bend_algebraic(g, BendSpec::bending(lim_curve, lim_t));
            } else if (!lim_c.empty()) {
                r = holonomy_rep(g, default_basis(), parse_coefficients(lim_c));
            } else {
                r = Representation::fuchsian(g);
            }
            const LimitSetResult ls = limit_set_points(r, len);
            if (!ls.warning.empty()) std::cerr << "warning: " << ls.warning << '\n';
            if (out_path.empty()) {
                write_point_csv(std::cout, ls.points);
            } else {
                std::ofstream out(out_path);
                if (!out) throw ConfigError("cannot write '" + out_path + "'");
                write_point_csv(out, ls.points);
                std::cerr << ls.points.size() << " points written to " << out_path << '\n';
            }
            return kExitOk;
        });
    }
    return kExitFailed;
}
