#pragma once

#include <optional>

#include "halfspace/numerics.hpp"
#include "halfspace/testfun.hpp"

namespace halfspace {

struct BubbleConstants {
    int N = 0;
    double K1 = 0.0;  // int |grad U|^2
    double K2 = 0.0;  // int U^{2*}
    double K3 = 0.0;  // int_{boundary} U^{2_*}
    double A = 0.0;   // K1/2 - K2/2* - K3/2_*
};

struct TraceConstants {
    int N = 0;
    double A_N = 0.0;
    double B_N = 0.0;
    double S0 = 0.0;
};

// A quantity computed two ways; both are kept so the comparison is auditable.
struct TwoPath {
    double quadrature = 0.0;
    double closed_form = 0.0;
    double rel_diff() const;
};

struct ExpansionCoefficients {
    int N = 0;
    double b = 0.0;       // sqrt((2N-2)/(N-2))
    double Gamma0 = 0.0;  // Gamma((N-1)/2)

    // u-family (N >= 5, except gamma_N which needs N >= 4).
    std::optional<double> alpha_N, beta_N, gamma_N, d_N;
    // Integrals over y in the half-space with D = 1 + |y'|^2 + (y_N + x0)^2.
    std::optional<double> C1, C2, C4, C5, C6;
    std::optional<double> C3;  // boundary integral, N >= 4
    std::optional<double> C3_closed, C6_closed;

    // uhat-family.
    std::optional<TwoPath> alpha_hat_N, d_hat_N;  // N >= 5
    std::optional<TwoPath> gamma_hat_N;           // N >= 4
    std::optional<double> D1, D2, D4;             // N >= 5
    std::optional<double> D3;                     // N >= 4
};

BubbleConstants bubble_constants(int N, const QuadratureSpec& spec, double eps = 1.0);
TraceConstants trace_constants(int N, const QuadratureSpec& spec, double eps = 1.0);
ExpansionCoefficients expansion_coefficients(int N, const QuadratureSpec& spec);
double xi_N(int N, const QuadratureSpec& spec);
double theta_of_tau(int N, double tau, const QuadratureSpec& spec, double eps = 1.0);

// Thread-safe memoized versions keyed by (N, spec). Concurrent callers for the
// same key block until the first computation finishes.
const BubbleConstants& cached_bubble_constants(int N, const QuadratureSpec& spec);
const TraceConstants& cached_trace_constants(int N, const QuadratureSpec& spec);
const ExpansionCoefficients& cached_expansion_coefficients(int N, const QuadratureSpec& spec);

}  // namespace halfspace
