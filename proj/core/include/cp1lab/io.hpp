#pragma once

// JSON serialization of the library's documents. Loading errors are reported
// as ConfigError.

#include <nlohmann/json.hpp>
#include <string>

#include "cp1lab/bending.hpp"
#include "cp1lab/holonomy.hpp"
#include "cp1lab/quaddiff.hpp"
#include "cp1lab/scan.hpp"

namespace cp1lab {

using json = nlohmann::json;

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);

/// {"a": [re, im], "b": ..., "c": ..., "d": ...}
json mobius_to_json(const MobiusMap& m);
/// Rejects matrices with |ad - bc - 1| > 1e-9 max(1, |entries|^2).
MobiusMap mobius_from_json(const json& j);

json word_to_json(const Word& w);
Word word_from_json(const json& j);

/// {"generators": [4 maps], "relator": [letters], "basepoint": [re, im]}
json group_to_json(const MarkedGroup& g);
MarkedGroup group_from_json(const json& j);

/// {"poles": [[re, im], ...], "coefficients": [[re, im], ...], "L": n}
json quaddiff_to_json(const QuadDiff& q);
QuadDiff quaddiff_from_json(const json& j, const MarkedGroup& g);

json character_to_json(const Character& ch);

/// {"c", "character", "relator_defect", "tolerances"}
json holonomy_record_to_json(const HolonomyRecord& r);

/// Scheduling fields (workers, rows_per_block) are not echoed, so the echo
/// depends only on what determines the grid.
json scan_config_to_json(const ScanConfig& cfg);
/// Missing keys keep their defaults; unknown keys and bad values throw.
ScanConfig scan_config_from_json(const json& j);
ScanConfig load_scan_config(const std::string& path);

/// {"config": echo, "pixels": [records], "summary": {...}}
json scan_grid_to_json(const ScanGrid& grid);

/// {"curve", "t", "character", "periodicity_residual", "agreement_residual", ...}
json bend_report_to_json(const BendReport& r);

}  // namespace cp1lab
