#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace permuto {

struct CheckResult {
    int id = 0;             // criterion number; 0 for invariant extras
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    std::vector<CheckResult> criteria;
    std::vector<CheckResult> invariants;
    bool all_passed() const;
    nlohmann::json payload() const;  // deterministic: no timings inside
    std::string summary() const;
};

/// The acceptance criteria (exact, seed-controlled where fuzzing occurs).
VerifyReport run_acceptance(unsigned long long seed);

/// Acceptance criteria plus the per-module invariant suites.
VerifyReport run_full_verification(unsigned long long seed);

}  // namespace permuto
