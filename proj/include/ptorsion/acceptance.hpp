#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ptorsion::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int kCriteria = 12;

// Runs one criterion at the current working precision; never throws, failures land in detail.
CriterionResult run_criterion(int id);

// Runs all criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS [n] title: detail"
std::string format_line(const CriterionResult& r, bool with_time);

}  // namespace ptorsion::acceptance
