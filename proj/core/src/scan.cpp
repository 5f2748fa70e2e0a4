#include "cp1lab/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <mutex>
#include <ostream>
#include <thread>

namespace cp1lab {

namespace {

cplx trace_product(const MobiusMap& x, const MobiusMap& y) {
    return x.a() * y.a() + x.b() * y.c() + x.c() * y.b() + x.d() * y.d();
}

}  // namespace

std::optional<JorgensenWitness> jorgensen_violation(const Representation& r, const ElementTable& table, int L,
                                                    double margin) {
    if (L < 1 || L > table.max_length()) throw DomainError("jorgensen_violation: L outside the table range");
    const double bound = 1.0 - margin;
    // Only A with |tr^2 A - 4| < bound can take part in a violation.
    std::vector<std::size_t> candidates;
    for_each_image(table, r.generators(), L, [&](std::size_t i, const MobiusMap& m) {
        if (i != 0 && std::abs(m.trace_squared() - 4.0) < bound) candidates.push_back(i);
    });
    if (candidates.empty()) return std::nullopt;
    std::sort(candidates.begin(), candidates.end());

    const std::size_t end = table.sphere(L).second;
    std::vector<MobiusMap> images(end);
    for_each_image(table, r.generators(), L, [&](std::size_t i, const MobiusMap& m) { images[i] = m; });
    for (std::size_t ia : candidates) {
        const MobiusMap& a = images[ia];
        const cplx ta = a.trace();
        const double da = std::abs(ta * ta - 4.0);
        for (std::size_t ib = 1; ib < end; ++ib) {
            if (ib == ia) continue;
            const MobiusMap& b = images[ib];
            const cplx tb = b.trace();
            const cplx tab = trace_product(a, b);
            const cplx comm = ta * ta + tb * tb + tab * tab - ta * tb * tab - 2.0;
            const double v = da + std::abs(comm - 2.0);
            if (!(v < bound)) continue;
            if (is_elementary_pair(a, b)) continue;
            return JorgensenWitness{table.word(ia), table.word(ib), v};
        }
    }
    return std::nullopt;
}

std::optional<JorgensenWitness> jorgensen_violation(const Representation& r, int L, double margin) {
    return jorgensen_violation(r, *bolza_elements(L), L, margin);
}

void ScanConfig::validate() const {
    auto fail = [](const std::string& m) { throw ConfigError("scan config: " + m); };
    if (basis_index < 0 || basis_index > 2) fail("basis_index must be 0, 1 or 2");
    if (nx < 1 || ny < 1) fail("resolution must be at least 1x1");
    if (!(half_width_re > 0.0) || !(half_width_im > 0.0)) fail("half widths must be positive");
    if (!std::isfinite(center.real()) || !std::isfinite(center.imag())) fail("center must be finite");
    if (jorgensen_len < 1 || jorgensen_len > 8) fail("jorgensen_length must be in [1, 8]");
    if (!(margin >= 0.0 && margin < 1.0)) fail("margin must be in [0, 1)");
    if (!(ode_tol > 0.0) || ode_tol > 1e-4) fail("ode_tol must be in (0, 1e-4]");
    if (!(relator_tol > 0.0)) fail("relator_tol must be positive");
    if (!(failure_budget >= 0.0 && failure_budget <= 1.0)) fail("failure_budget must be in [0, 1]");
    if (basis_len < 2 || basis_len > 8) fail("basis_len must be in [2, 8]");
    if (workers < 0) fail("workers must be >= 0");
    if (rows_per_block < 1) fail("rows_per_block must be >= 1");
}

cplx ScanConfig::pixel(int col, int row) const {
    const double x = center.real() - half_width_re + (2.0 * col + 1.0) * half_width_re / nx;
    const double y = center.imag() + half_width_im - (2.0 * row + 1.0) * half_width_im / ny;
    return {x, y};
}

const char* to_string(PixelClass c) {
    switch (c) {
        case PixelClass::violation: return "violation";
        case PixelClass::no_violation: return "no-violation";
        case PixelClass::failure: return "integration-failure";
    }
    return "unknown";
}

int ScanGrid::failures() const {
    return static_cast<int>(std::count_if(pixels.begin(), pixels.end(),
                                          [](const PixelRecord& p) { return p.cls == PixelClass::failure; }));
}

int ScanGrid::violations() const {
    return static_cast<int>(std::count_if(pixels.begin(), pixels.end(),
                                          [](const PixelRecord& p) { return p.cls == PixelClass::violation; }));
}

bool ScanGrid::failure_budget_exceeded() const {
    return static_cast<double>(failures()) > config.failure_budget * static_cast<double>(pixels.size());
}

std::uint64_t character_hash(const Character& ch) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const cplx& v : ch.values) {
        const double parts[2] = {v.real(), v.imag()};
        unsigned char bytes[sizeof parts];
        std::memcpy(bytes, parts, sizeof parts);
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

ScanGrid run_scan(const ScanConfig& cfg, const ScanProgress& progress) {
    cfg.validate();
    const MarkedGroup g = bolza_group();
    const DiffBasis local = cfg.basis_len == 8 ? DiffBasis{} : basis(g, cfg.basis_len);
    const DiffBasis& b = cfg.basis_len == 8 ? default_basis() : local;

    // Steps are adapted to the pixel of largest |c|, the most demanding one.
    cplx worst = 0.0;
    for (int row : {0, cfg.ny - 1})
        for (int col : {0, cfg.nx - 1})
            if (std::abs(cfg.pixel(col, row)) > std::abs(worst)) worst = cfg.pixel(col, row);
    if (std::abs(worst) < 0.1) worst = 0.1;
    std::array<cplx, 3> design{};
    design[static_cast<std::size_t>(cfg.basis_index)] = worst;
    TransportOptions topt;
    topt.tol = cfg.ode_tol;
    const MonodromyPlan plan(g, b, design, topt);
    const auto table = bolza_elements(cfg.jorgensen_len);

    ScanGrid grid;
    grid.config = cfg;
    grid.pixels.resize(static_cast<std::size_t>(cfg.nx) * static_cast<std::size_t>(cfg.ny));

    auto do_pixel = [&](int col, int row) {
        PixelRecord rec;
        rec.c = cfg.pixel(col, row);
        try {
            std::array<cplx, 3> c{};
            c[static_cast<std::size_t>(cfg.basis_index)] = rec.c;
            const Representation rep = plan.at(c);
            rec.relator_defect = rep.relator_defect();
            const Character ch = character_of(rep);
            rec.character_hash = character_hash(ch);
            bool finite = std::isfinite(rec.relator_defect);
            for (const cplx& v : ch.values) finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
            if (!finite) throw NumericalError("non-finite holonomy");
            if (!(rec.relator_defect <= cfg.relator_tol))
                throw NumericalError("integration tolerance insufficient (relator defect " +
                                     std::to_string(rec.relator_defect) + ")");
            rec.witness = jorgensen_violation(rep, *table, cfg.jorgensen_len, cfg.margin);
            rec.cls = rec.witness ? PixelClass::violation : PixelClass::no_violation;
        } catch (const Error& e) {
            rec.cls = PixelClass::failure;
            rec.failure = e.what();
        }
        grid.pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(cfg.nx) + static_cast<std::size_t>(col)] =
            std::move(rec);
    };

    const int blocks = (cfg.ny + cfg.rows_per_block - 1) / cfg.rows_per_block;
    std::atomic<int> next{0};
    std::atomic<int> rows_done{0};
    std::mutex progress_mutex;
    auto worker = [&] {
        for (int blk = next++; blk < blocks; blk = next++) {
            const int r0 = blk * cfg.rows_per_block;
            const int r1 = std::min(cfg.ny, r0 + cfg.rows_per_block);
            for (int row = r0; row < r1; ++row)
                for (int col = 0; col < cfg.nx; ++col) do_pixel(col, row);
            const int done = rows_done += r1 - r0;
            if (progress) {
                const std::lock_guard<std::mutex> lock(progress_mutex);
                progress(done, cfg.ny);
            }
        }
    };
    int n_workers = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n_workers = std::min(n_workers, blocks);
    std::vector<std::thread> threads;
    for (int i = 1; i < n_workers; ++i) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    return grid;
}

std::string render_ppm(const ScanGrid& grid) { return render_ppm(grid, grid.config.palette); }

std::string render_ppm(const ScanGrid& grid, const Palette& palette) {
    const int nx = grid.config.nx, ny = grid.config.ny;
    std::string out = "P6\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    out.reserve(out.size() + static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * 3);
    for (int row = 0; row < ny; ++row)
        for (int col = 0; col < nx; ++col) {
            const PixelClass c = grid.at(col, row).cls;
            const Rgb& rgb = c == PixelClass::violation      ? palette.violation
                             : c == PixelClass::no_violation ? palette.no_violation
                                                             : palette.failure;
            out.push_back(static_cast<char>(rgb.r));
            out.push_back(static_cast<char>(rgb.g));
            out.push_back(static_cast<char>(rgb.b));
        }
    return out;
}

namespace {

// Point of the unit sphere (stereographic), used as a sort key.
std::array<double, 3> sphere(const ComplexPoint& p) {
    if (p.is_infinite()) return {0.0, 0.0, 1.0};
    const cplx z = p.value();
    const double n = std::norm(z);
    return {2.0 * z.real() / (1.0 + n), 2.0 * z.imag() / (1.0 + n), (n - 1.0) / (n + 1.0)};
}

}  // namespace

LimitSetResult limit_set_points(const Representation& r, int max_len) {
    if (max_len < 1 || max_len > 8) throw DomainError("limit_set_points: max_len must be in [1, 8]");
    const auto table = bolza_elements(max_len);
    LimitSetResult res;
    std::vector<std::pair<std::array<double, 3>, ComplexPoint>> raw;
    for_each_image(*table, r.generators(), max_len, [&](std::size_t i, const MobiusMap& m) {
        if (i == 0) return;
        if (classify(m).kind != MobiusKind::loxodromic) {
            ++res.non_loxodromic;
            return;
        }
        ++res.loxodromic;
        const ComplexPoint p = loxodromic_fixed_points(m).attracting;
        raw.emplace_back(sphere(p), p);
    });
    if (res.non_loxodromic > res.loxodromic) {
        res.warning = "elliptic-dominated input: " + std::to_string(res.non_loxodromic) + " of " +
                      std::to_string(res.non_loxodromic + res.loxodromic) + " elements are not loxodromic";
        return res;
    }
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    constexpr double kTol = 1e-9;
    std::vector<std::pair<std::array<double, 3>, ComplexPoint>> kept;
    for (const auto& cand : raw) {
        bool dup = false;
        for (std::size_t k = kept.size(); k-- > 0;) {
            // chordal distance <= tol implies the first sphere coordinates differ by <= 2 tol
            if (cand.first[0] - kept[k].first[0] > 2.0 * kTol) break;
            if (cand.second.chordal_distance(kept[k].second) <= kTol) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(cand);
    }
    res.points.reserve(kept.size());
    for (const auto& k : kept) res.points.push_back(k.second);
    return res;
}

void write_point_csv(std::ostream& os, const std::vector<ComplexPoint>& pts) {
    os << "re,im\n";
    os.precision(17);
    for (const auto& p : pts) {
        if (p.is_infinite())
            os << "inf,inf\n";
        else
            os << p.value().real() << ',' << p.value().imag() << '\n';
    }
}

}  // namespace cp1lab
