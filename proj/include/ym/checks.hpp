#pragma once

#include <string>
#include <vector>

namespace ym {

// Self-contained verification suite: each check exercises one documented
// guarantee of the library end to end and reports pass/fail with a
// one-line measurement summary. Checks with runtime budgets fail when
// they exceed them.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct CheckOptions {
    // Integrator tolerance used by the conservation check; loosening it
    // (e.g. to 1e-3) demonstrates that the drift bound genuinely responds
    // to integration error.
    double orbit_tol = 1e-10;
    // Halve the relaxation grids (set by YM_CHECK_FAST=1 in the CLI) to
    // trade sharpness for speed on slow machines.
    bool fast = false;
};

const std::vector<std::string>& check_names();

// Throws DomainError for unknown names; never throws for failures (those
// are reported in the result).
CheckResult run_check(const std::string& name, const CheckOptions& = {});

// Runs every check whose name contains `filter` (empty = all), in the
// canonical order.
std::vector<CheckResult> run_checks(const std::string& filter,
                                    const CheckOptions& = {});

}  // namespace ym
