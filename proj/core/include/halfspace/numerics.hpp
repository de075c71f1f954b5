#pragma once

#include <functional>
#include <limits>

namespace halfspace {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;

    // Throws DomainError unless every field is positive.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions_used = 0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Fn1 = std::function<double(double)>;
// Profile h(r, x_N) of a cylindrically symmetric function on the half-space.
using Fn2 = std::function<double(double r, double xn)>;

double gamma_fn(double x);
double log_gamma_fn(double x);
double beta_fn(double a, double b);
// Surface area of the unit sphere in R^m.
double sphere_area(int m);

// Adaptive Gauss-Kronrod (7/15) quadrature with global bisection. An infinite
// upper limit is handled by r = t / (1 - t).
QuadratureResult integrate_1d(const Fn1& f, double lo, double hi, const QuadratureSpec& spec);

// omega_{N-1} * int_0^R int_0^sqrt(R^2 - x_N^2) r^{N-2} h(r, x_N) dr dx_N.
// R = +inf integrates over the whole half-space; a finite R is a promise that
// h vanishes outside the half-ball of that radius.
QuadratureResult integrate_halfspace(const Fn2& h, int N, const QuadratureSpec& spec,
                                     double support_radius = kInf);

// omega_{N-1} * int_0^R r^{N-2} h(r) dr, i.e. the integral over R^{N-1}.
QuadratureResult integrate_boundary(const Fn1& h, int N, const QuadratureSpec& spec,
                                    double support_radius = kInf);

}  // namespace halfspace
