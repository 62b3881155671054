#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncarea/area.hpp"

namespace ncarea {

struct CheckResult {
    std::string name;
    double tolerance = 0.0;
    double worst = 0.0;  // worst measured deviation; pass iff worst <= tolerance
    bool pass = false;
    std::string detail;  // spec string of the worst case
};

struct CheckOptions {
    std::vector<std::string> families;  // empty = every family
    int cases_per_family = 8;
    std::uint64_t seed = 20180709;
    // Test hook: scale one expansion coefficient to break normalization.
    int perturb_index = -1;
    double perturb_scale = 1.0;
};

/// Runs the invariant suite over randomized states: tomogram normalization
/// and mirror symmetry, the Heisenberg floor on std pairs, tomographic vs
/// ladder-moment std agreement, pi-periodicity, the sqrt(2) pi area floor,
/// closed-form and product-relation agreement, displacement invariance, and
/// parity support.
std::vector<CheckResult> run_invariant_checks(const CheckOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

/// One formatted "[PASS]/[FAIL]" line per result.
std::string format_check_report(const std::vector<CheckResult>& results);

/// Figure-specific assertions over sweep rows (monotonicity, curve ordering,
/// even/odd merging).
std::vector<CheckResult> sweep_assertions(const std::string& figure,
                                          const std::vector<SweepRow>& rows);

}  // namespace ncarea
