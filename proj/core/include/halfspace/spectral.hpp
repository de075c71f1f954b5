#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "halfspace/numerics.hpp"
#include "halfspace/testfun.hpp"

namespace halfspace {

// ||u||^2 / int K u^2; bounded below by the first eigenvalue N/2.
double rayleigh_volume(const TestFunction& u, const QuadratureSpec& spec);
// ||u||^2 / int_{boundary} K u^2; every value is an upper bound for mu_1.
double rayleigh_boundary(const TestFunction& u, const QuadratureSpec& spec);

// Elements e^{-|x|^2/4} r^{2i} x_N^j, stored as (coef = 1, i, j).
struct RitzBasis {
    int N = 3;
    std::vector<PolyTerm> elements;

    // The nested chain used for mu_1: x_N^0, x_N^1, ..., x_N^{size-1}.
    static RitzBasis boundary_chain(int N, int size);
    // All (i, j) with i + j <= degree, ordered by total degree, pure x_N first.
    static RitzBasis full(int N, int degree);
};

// Exact Gram matrices of a Ritz basis from Gaussian moments: the energy form
// int K grad u_k . grad u_l, the L^2_K volume form and the L^2_K boundary form.
struct RitzGram {
    std::vector<std::vector<double>> energy, volume, boundary;
};
RitzGram ritz_gram(const RitzBasis& basis);

struct EigenEstimate {
    double value = 0.0;
    int basis_size = 0;
    std::vector<std::pair<int, double>> history;  // (size, Ritz value), nonincreasing
    double gram_condition = 0.0;                  // of the equilibrated energy Gram at the largest size
};

// Rayleigh-Ritz upper bounds for mu_1 over the nested boundary chain of
// sizes 1..max_basis_size.
EigenEstimate estimate_mu1(int N, int max_basis_size, const QuadratureSpec& spec);
// Smallest generalized eigenvalue of (energy, boundary) on an arbitrary basis.
double ritz_boundary_value(const RitzBasis& basis);

// The separable minimizer e^{-|x|^2/4} h(x_N), h(t) = int_0^inf s^{N-1} e^{-s^2 - t s} ds,
// gives mu_1 = Gamma((N+1)/2) / Gamma(N/2). Used as a test oracle.
double mu1_separable(int N);

struct HardyResult {
    double lhs = 0.0;  // (N^2/4) int u^2
    double rhs = 0.0;  // int (x . grad u)^2
    bool holds = true;
};
HardyResult hardy_check(const TestFunction& u, const QuadratureSpec& spec);

// Seeded random Ritz combinations with coefficients in [-1, 1].
std::vector<TestFunction> random_ritz_combinations(int N, int count, int degree, std::uint64_t seed);

}  // namespace halfspace
