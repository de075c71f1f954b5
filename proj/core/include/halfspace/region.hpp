#pragma once

#include <string>
#include <vector>

#include "halfspace/numerics.hpp"

namespace halfspace {

struct ProblemParams {
    int N = 3;
    int a = 1;
    double q = 2.0;
    double lambda = 0.0;
    double mu = 0.0;
    void validate() const;  // DomainError unless N >= 3, a in {0,1}, 2 <= q < 2_*, all finite
};

// Two-sided knowledge of mu_1; lower = 0 means no lower bound is known.
struct Mu1Bracket {
    double lower = 0.0;
    double upper = 0.0;
    void validate() const;  // 0 <= lower < upper
};

enum class Verdict { ExistsPositive, NoPositive, Unknown };
std::string verdict_name(Verdict v);

struct RegionVerdict {
    Verdict verdict = Verdict::Unknown;
    std::string clause;  // the first clause that fired, or "none"
    std::vector<std::string> existence_matches;
    std::vector<std::string> nonexistence_matches;
    bool conflict() const { return !existence_matches.empty() && !nonexistence_matches.empty(); }
};

// lambda_star is Lambda*: lambda_bar(N) for a = 1, lambda_hat(N) for a = 0.
RegionVerdict classify(const ProblemParams& p, const Mu1Bracket& mu1, double lambda_star);

// Lambda* for the given a, computed from the thresholds module.
double region_lambda_star(int N, int a, const QuadratureSpec& spec);

// mu on the line 1 - 2 lambda/N - mu/mu1 = 0.
double eta_curve(int N, double lambda, double mu1_value);

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 2;  // number of points, endpoints included
    double at(int k) const;
    void validate() const;
    // "lo:hi:step" with step > 0; the point count is round((hi - lo)/step) + 1.
    static GridAxis parse(const std::string& text);
};

struct GridRow {
    int N = 3;
    int a = 1;
    double q = 2.0;
    double lambda = 0.0;
    double mu = 0.0;
    Verdict verdict = Verdict::Unknown;
    std::string clause;
    bool conflict = false;
};

// Rows in lambda-major order (lambda outer, mu inner).
std::vector<GridRow> emit_grid(const ProblemParams& tmpl, const GridAxis& lambda_axis, const GridAxis& mu_axis,
                               const Mu1Bracket& mu1, double lambda_star, int threads = 1);

// Checks that the verdicts along mu = 0 read No, Unknown (possibly empty),
// Exists, No as lambda increases, with the switches within one grid step
// of N/4, Lambda* and N/2. Rows must come from emit_grid.
struct AxisPattern {
    bool ok = false;
    std::string detail;
};
AxisPattern check_mu_zero_axis(const std::vector<GridRow>& rows, double lambda_star);

}  // namespace halfspace
