#pragma once

#include <string>
#include <vector>

namespace fpf {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

CriterionResult check_maximum_principle();
CriterionResult check_null_solution();
CriterionResult check_fatigue_identity();
CriterionResult check_dissipation();
CriterionResult check_density_sweep();
CriterionResult check_frequency_sweep();
CriterionResult check_landscape_thresholds();
CriterionResult check_thermal_consistency();
CriterionResult check_wave_period();
CriterionResult check_weak_residuals();
CriterionResult check_determinism();

/// All eleven acceptance properties, in order.
std::vector<CriterionResult> run_acceptance_suite();

/// A single criterion by number; ids outside 1..11 yield a failed result.
CriterionResult run_acceptance_criterion(int id);

/// "PASS  3  fatigue identity  (detail)"
std::string format_result(const CriterionResult& r);

} // namespace fpf
