#pragma once

// The acceptance property suite (criteria 1-10), shared by the acceptance
// test binary and `cp1lab check`.

#include <functional>
#include <string>
#include <vector>

namespace cp1lab {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

struct CheckOptions {
    int workers = 0;            // scan workers, 0 = hardware concurrency
    std::string artifact_dir;   // when set, scan outputs are written there
    std::vector<int> only;      // empty = all criteria
};

std::vector<CheckResult> run_checks(const CheckOptions& opt = {},
                                    const std::function<void(const CheckResult&)>& on_result = {});

CheckResult check_schwarzian_identities();
CheckResult check_ode_inversion();
CheckResult check_basepoint_exactness();
CheckResult check_holomorphy();
CheckResult check_bending_cross_validation();
CheckResult check_pleated_plane();
CheckResult check_thurston_metric();
CheckResult check_nehari_scan(const CheckOptions& opt = {});
CheckResult check_dimension_echo();
CheckResult check_fuchsian_limit_set();

/// "PASS [n] name: detail" / "FAIL [n] ...".
std::string format_result(const CheckResult& r);

}  // namespace cp1lab
