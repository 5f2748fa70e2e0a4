#pragma once

// Raster scans of complex slices c phi_k of the Bolza fiber: per-pixel
// holonomy, Jorgensen non-discreteness witnesses, PPM output and limit sets.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cp1lab/holonomy.hpp"

namespace cp1lab {

struct JorgensenWitness {
    Word a, b;
    double value = 0.0;  // |tr^2 A - 4| + |tr [A, B] - 2|
};

inline constexpr double kJorgensenMargin = 1e-9;

/// First pair (A, B) over the shortlex element order up to length L with
/// |tr^2 A - 4| + |tr [A, B] - 2| < 1 - margin, skipping the identity and
/// elementary pairs. A is the outer loop, B the inner one.
std::optional<JorgensenWitness> jorgensen_violation(const Representation& r, const ElementTable& table, int L,
                                                    double margin = kJorgensenMargin);
/// Uses the shared Bolza table.
std::optional<JorgensenWitness> jorgensen_violation(const Representation& r, int L, double margin = kJorgensenMargin);

struct Rgb {
    std::uint8_t r, g, b;
    bool operator==(const Rgb&) const = default;
};

/// Dark = Jorgensen violation (certified non-discrete), light = no violation
/// found (possibly discrete), red = integration failure.
struct Palette {
    Rgb violation{24, 24, 48};
    Rgb no_violation{236, 236, 228};
    Rgb failure{220, 32, 32};
};

struct ScanConfig {
    int basis_index = 0;
    cplx center{0.0, 0.0};
    double half_width_re = 1.2;
    double half_width_im = 1.2;
    int nx = 64;
    int ny = 64;
    int jorgensen_len = 6;
    double margin = kJorgensenMargin;
    double ode_tol = 1e-10;
    double relator_tol = 1e-6;
    double failure_budget = 0.01;  // fraction of pixels
    int basis_len = 8;             // truncation of the Poincare series
    int workers = 0;               // 0 = hardware concurrency
    int rows_per_block = 4;
    std::string ppm_path;          // empty = not written
    std::string json_path;
    Palette palette{};

    /// Throws ConfigError when a field is out of range.
    void validate() const;
    /// Pixel center; row 0 is the top row (largest imaginary part).
    cplx pixel(int col, int row) const;
};

enum class PixelClass { violation, no_violation, failure };
const char* to_string(PixelClass c);

struct PixelRecord {
    cplx c;
    PixelClass cls = PixelClass::no_violation;
    std::optional<JorgensenWitness> witness;
    std::uint64_t character_hash = 0;
    double relator_defect = 0.0;
    std::string failure;  // message for integration failures
};

struct ScanGrid {
    ScanConfig config;
    std::vector<PixelRecord> pixels;  // row-major, row 0 on top

    const PixelRecord& at(int col, int row) const {
        return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(config.nx) + static_cast<std::size_t>(col)];
    }
    int failures() const;
    int violations() const;
    bool failure_budget_exceeded() const;
};

/// FNV-1a over the bytes of the character values.
std::uint64_t character_hash(const Character& ch);

using ScanProgress = std::function<void(int rows_done, int rows_total)>;

/// Fills the grid pixel by pixel; per-pixel failures are recorded, never thrown.
ScanGrid run_scan(const ScanConfig& cfg, const ScanProgress& progress = {});

std::string render_ppm(const ScanGrid& grid);
std::string render_ppm(const ScanGrid& grid, const Palette& palette);

struct LimitSetResult {
    std::vector<ComplexPoint> points;
    int loxodromic = 0;
    int non_loxodromic = 0;
    std::string warning;  // set for elliptic-dominated input
};

/// Attracting fixed points of the loxodromic images of all elements up to
/// max_len (chordal deduplication at 1e-9).
LimitSetResult limit_set_points(const Representation& r, int max_len);

/// "re,im" rows with infinity written as "inf,inf".
void write_point_csv(std::ostream& os, const std::vector<ComplexPoint>& pts);

}  // namespace cp1lab
