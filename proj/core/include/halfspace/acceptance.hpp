#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halfspace/numerics.hpp"

namespace halfspace {

struct AcceptanceOptions {
    QuadratureSpec spec;
    int threads = 1;
    std::uint64_t seed = 20240917;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double budget_seconds = 0.0;    // runtime ceiling stated for the criterion (0 = none)
    std::vector<std::string> lines; // deterministic detail lines, no timings
};

// Criteria 1-9 are computed in-process. Criterion 10 (byte-identical reruns)
// needs two processes and is driven by the acceptance test binary.
inline constexpr int kInProcessCriteria = 9;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

}  // namespace halfspace
