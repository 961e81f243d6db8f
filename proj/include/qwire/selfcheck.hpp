#pragma once

#include <string>
#include <vector>

namespace qwire {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelfcheckOptions {
    bool oracle = false;
    /// Test hook: "unitarity" rescales every S-matrix by 1.1 before the unitarity suite.
    std::string inject_fault;
    unsigned draws = 1000;
};

/// Invariant suites: unitarity_defect, route_equivalence, probability_budget,
/// purity_identity, full_state_zero, zero_alignment (+ oracle_agreement).
std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& options);

/// "PASS name (detail)" lines followed by "PASS n/n suites" or "FAIL m/n suites".
std::string format_selfcheck(const std::vector<SuiteResult>& results);

bool all_passed(const std::vector<SuiteResult>& results);

} // namespace qwire
