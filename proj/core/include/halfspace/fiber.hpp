#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halfspace/numerics.hpp"
#include "halfspace/testfun.hpp"

namespace halfspace {

// The five norms of a test function that determine its fiber energy
//   g(t) = 1/2 (E - lambda P) t^2 - a V/2* t^{2*} - T/2_* t^{2_*} - mu Q/q t^q.
struct FiberCoefficients {
    double E = 0.0;  // int K |grad u|^2
    double P = 0.0;  // int K u^2
    double V = 0.0;  // int K |u|^{2*}
    double T = 0.0;  // int_{boundary} K |u|^{2_*}
    double Q = 0.0;  // int_{boundary} K |u|^q
    int a = 1;
    double q = 2.0;
    double lambda = 0.0;
    double mu = 0.0;
    Exponents exps = Exponents::make(3);

    double fiber(double t) const;
    // g'(t) / t
    double reduced_slope(double t) const;
};

struct FiberMax {
    double t_star = 0.0;
    double value = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
    // t*^{2_*-2} from the quadratic formula when there is no q-term; empty otherwise.
    std::optional<double> closed_form_s;
};

FiberCoefficients measure_coefficients(Family family, int N, double eps, double q, const QuadratureSpec& spec);
FiberMax maximize_fiber(const FiberCoefficients& c);

struct ConditionRow {
    double eps = 0.0;
    double value = 0.0;   // sup of the fiber (or the quotient for the N = 3, a = 0, mu = 0 form)
    double target = 0.0;  // A, S0^{N-1}/(2(N-1)) or S0
    bool passes = false;
    double t_star = 0.0;
};

enum class Trend { Widening, Stable, Narrowing, Undetermined };
std::string trend_name(Trend t);

struct ConditionReport {
    int N = 0;
    int a = 1;
    double lambda = 0.0;
    double mu = 0.0;
    double q = 2.0;
    Family family = Family::U;
    bool quotient_form = false;
    std::vector<ConditionRow> rows;  // sorted by decreasing eps
    Trend trend = Trend::Undetermined;
    // Pass at the two smallest eps and the scaled margin is not narrowing.
    bool met = false;
};

inline const std::vector<double> kConditionEpsGrid = {0.1, 0.07, 0.05, 0.03, 0.02};

Family condition_family(int N, int a, double mu);

ConditionReport check_condition_a1(int N, double lambda, double mu, double q, std::vector<double> eps_list,
                                   const QuadratureSpec& spec, int threads = 1);
ConditionReport check_condition_a0(int N, double lambda, double mu, double q, std::vector<double> eps_list,
                                   const QuadratureSpec& spec, int threads = 1);

}  // namespace halfspace
