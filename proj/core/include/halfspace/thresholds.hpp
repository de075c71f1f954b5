#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfspace/numerics.hpp"

namespace halfspace {

// One displayed inequality lhs < rhs, kept with its raw sides.
struct ChainCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

struct ThresholdReport {
    int N = 0;
    std::optional<double> lambda_star;  // N >= 5
    double lambda_bar = 0.0;
    double lambda_hat = 0.0;
    double lower_bound = 0.0;  // N/4
    double upper_bound = 0.0;  // (N-2)/2
    std::vector<ChainCheck> chain_checks;

    bool all_satisfied() const;
};

double lambda_star(int N, const QuadratureSpec& spec);
double lambda_bar(int N, const QuadratureSpec& spec);
double lambda_hat(int N);

// Full report for any 3 <= N <= 12. The bound chain is only populated for
// N >= 5; smaller N carry the range checks on lambda_bar and lambda_hat.
ThresholdReport threshold_report(int N, const QuadratureSpec& spec);
// Same as threshold_report, but rejects N < 5.
ThresholdReport verify_lambda_star_chain(int N, const QuadratureSpec& spec);

}  // namespace halfspace
