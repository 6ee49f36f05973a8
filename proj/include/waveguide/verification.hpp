#pragma once

#include <string>
#include <vector>

namespace wg {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Acceptance criteria 1..10; each returns one or more pass/fail lines.
std::vector<CheckResult> run_criterion(int index);

// All criteria in order.
std::vector<CheckResult> run_acceptance();

// Regime bundles for the CLI: main | de_baseline | critical | strip_critical |
// resolvent | moments | oracle | all.
std::vector<CheckResult> run_verify(const std::string& tag);

}  // namespace wg
