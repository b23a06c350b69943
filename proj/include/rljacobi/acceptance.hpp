#pragma once

#include <functional>
#include <string>
#include <vector>

namespace rljacobi {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

/// Runs one acceptance criterion (1..9). Numerical failures inside a
/// criterion are caught and reported as a failed result.
CriterionResult run_criterion(int id);

/// All criteria in order; on_result, when given, sees each result as it lands.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace rljacobi
