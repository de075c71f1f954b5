#include "halfspace/thresholds.hpp"

#include <cmath>

#include "halfspace/constants.hpp"
#include "halfspace/errors.hpp"
#include "halfspace/testfun.hpp"

namespace halfspace {

bool ThresholdReport::all_satisfied() const {
    for (const ChainCheck& c : chain_checks) {
        if (!c.satisfied) return false;
    }
    return true;
}

double lambda_star(int N, const QuadratureSpec& spec) {
    if (N < 5) throw DomainError("lambda_star needs N >= 5, got " + std::to_string(N));
    const ExpansionCoefficients& c = cached_expansion_coefficients(N, spec);
    const Exponents e = Exponents::make(N);
    const double d = *c.d_N;
    return *c.alpha_N / d + 2.0 / e.two_star * *c.beta_N / d + 2.0 / e.two_lower * *c.gamma_N / d;
}

double lambda_bar(int N, const QuadratureSpec& spec) {
    if (N < 3) throw DomainError("lambda_bar needs N >= 3");
    if (N == 3) return (3.0 + std::sqrt(5.0)) / 4.0;
    if (N == 4) return 1.0;
    return lambda_star(N, spec);
}

double lambda_hat(int N) {
    if (N < 3) throw DomainError("lambda_hat needs N >= 3");
    if (N == 3) return (3.0 + std::sqrt(5.0)) / 4.0;
    return N / 4.0 + (N - 4) / 8.0;
}

namespace {

ChainCheck less(std::string name, double lhs, double rhs) { return {std::move(name), lhs, rhs, lhs < rhs}; }
ChainCheck less_eq(std::string name, double lhs, double rhs) { return {std::move(name), lhs, rhs, lhs <= rhs}; }

void append_bound_chain(ThresholdReport& rep, const QuadratureSpec& spec) {
    const int N = rep.N;
    const double n = N;
    const ExpansionCoefficients& c = cached_expansion_coefficients(N, spec);
    const double ls = *rep.lambda_star;
    const double omega = sphere_area(N - 1);
    const double b = c.b;
    const double G = c.Gamma0 * c.Gamma0 / gamma_fn(n - 1.0);  // Gamma0^2 / Gamma(N-1)
    const double C2 = *c.C2, C4 = *c.C4, C5 = *c.C5, C6 = *c.C6;
    const double sq = std::sqrt(n * (n - 2.0));
    auto& out = rep.chain_checks;

    out.push_back(less("N/4 < lambda*", rep.lower_bound, ls));
    out.push_back(less("lambda* < (N-2)/2", ls, rep.upper_bound));
    out.push_back(less("C5 < C6", C5, C6));
    out.push_back(less("C2 < C5", C2, C5));

    const double upper_exact = (n - 2.0) / 2.0 - sq * omega / (8.0 * (n - 3.0) * std::pow(b, n - 3.0) * C4) * G;
    out.push_back(less("upper: lambda* < (N-2)/2 - sqrt(N(N-2)) w G/(8(N-3) b^(N-3) C4)", ls, upper_exact));
    out.push_back(less("upper: that bound < (N-2)/2", upper_exact, rep.upper_bound));

    const double c2_low = omega / (4.0 * (n - 2.0) * std::pow(b, n - 2.0)) * G;
    const double c4_low = (n - 2.0) * omega / ((n - 3.0) * (n - 4.0) * std::pow(b, n - 4.0)) * G;
    out.push_back(less("w G/(4(N-2) b^(N-2)) < C2", c2_low, C2));
    out.push_back(less("(N-2) w G/((N-3)(N-4) b^(N-4)) < C4", c4_low, C4));

    const double lower_exact =
        (n - 2.0) / 2.0 -
        (3.0 * sq / (8.0 * (n - 3.0) * std::pow(b, n - 3.0)) - 1.0 / (8.0 * std::pow(b, n - 2.0))) * omega / C4 * G;
    out.push_back(less("lower: bound with exact C4 < lambda*", lower_exact, ls));

    if (N >= 7) {
        const double lower_ge7 = (n - 2.0) / 2.0 - 3.0 * std::sqrt(n) * (n - 4.0) / (8.0 * std::sqrt(2.0 * n - 2.0)) +
                           (n - 3.0) * (n - 4.0) / (8.0 * (2.0 * n - 2.0));
        out.push_back(less("lower N>=7: (N-2)/2 - 3sqrt(N)(N-4)/(8sqrt(2N-2)) + (N-3)(N-4)/(8(2N-2)) < lambda*", lower_ge7, ls));
        out.push_back(less("lower N>=7: N/4 < that bound", rep.lower_bound, lower_ge7));
    }
    if (N == 5) {
        const double lower5_exact =
            1.5 - (11.0 * std::sqrt(15.0) / (80.0 * b * b) - 1.0 / (8.0 * b * b * b)) * omega / C4 * G;
        out.push_back(less("lower N=5: bound with exact C4 < lambda*", lower5_exact, ls));
        const double lower5_closed = 1.5 - 11.0 * std::sqrt(5.0) / (80.0 * std::sqrt(2.0)) + 1.0 / 32.0;
        out.push_back(less("lower N=5: 3/2 - 11sqrt5/(80sqrt2) + 1/32 < lambda*", lower5_closed, ls));
        out.push_back(less("lower N=5: 5/4 < that bound", 1.25, lower5_closed));
    }
    if (N == 6) {
        const double lower6_exact = 2.0 - (7.0 * std::sqrt(6.0) / (36.0 * std::pow(b, 3)) - 1.0 / (8.0 * std::pow(b, 4))) *
                                     omega / C4 * G;
        out.push_back(less("lower N=6: bound with exact C4 < lambda*", lower6_exact, ls));
        const double lower6_closed = 2.0 - 7.0 * std::sqrt(3.0) / (12.0 * std::sqrt(5.0)) + 3.0 / 40.0;
        out.push_back(less("lower N=6: 2 - 7sqrt3/(12sqrt5) + 3/40 < lambda*", lower6_closed, ls));
        out.push_back(less("lower N=6: 3/2 < that bound", 1.5, lower6_closed));
    }
}

}  // namespace

ThresholdReport threshold_report(int N, const QuadratureSpec& spec) {
    if (N < 3 || N > kMaxDim) throw DomainError("dimension N must be in [3, 12], got " + std::to_string(N));
    ThresholdReport rep;
    rep.N = N;
    rep.lower_bound = N / 4.0;
    rep.upper_bound = (N - 2) / 2.0;
    if (N >= 5) rep.lambda_star = lambda_star(N, spec);
    rep.lambda_bar = lambda_bar(N, spec);
    rep.lambda_hat = lambda_hat(N);
    if (N >= 5) append_bound_chain(rep, spec);
    const double half = N / 2.0;
    rep.chain_checks.push_back(less_eq("N/4 <= lambda_bar", rep.lower_bound, rep.lambda_bar));
    rep.chain_checks.push_back(less("lambda_bar < N/2", rep.lambda_bar, half));
    rep.chain_checks.push_back(less_eq("N/4 <= lambda_hat", rep.lower_bound, rep.lambda_hat));
    rep.chain_checks.push_back(less("lambda_hat < N/2", rep.lambda_hat, half));
    return rep;
}

ThresholdReport verify_lambda_star_chain(int N, const QuadratureSpec& spec) {
    if (N < 5) throw DomainError("the lambda* bound chain needs N >= 5, got " + std::to_string(N));
    return threshold_report(N, spec);
}

}  // namespace halfspace
