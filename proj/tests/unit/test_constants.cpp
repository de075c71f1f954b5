#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "halfspace/constants.hpp"
#include "halfspace/errors.hpp"

using namespace halfspace;

namespace {
const QuadratureSpec kSpec{};
}

class ByDim : public ::testing::TestWithParam<int> {};

TEST_P(ByDim, BubbleIdentity) {
    const BubbleConstants& b = cached_bubble_constants(GetParam(), kSpec);
    EXPECT_LE(std::abs(b.K1 - b.K2 - b.K3), 1e-6 * b.K1);
    EXPECT_GT(b.A, 0.0);
}

TEST_P(ByDim, LevelIsTheFiberMaxOfTheBubble) {
    // With K1 = K2 + K3 the fiber t^2 K1/2 - t^{2*} K2/2* - t^{2_*} K3/2_* peaks at t = 1.
    const int N = GetParam();
    const BubbleConstants& b = cached_bubble_constants(N, kSpec);
    const Exponents e = Exponents::make(N);
    auto g = [&](double t) {
        return t * t * b.K1 / 2 - std::pow(t, e.two_star) * b.K2 / e.two_star -
               std::pow(t, e.two_lower) * b.K3 / e.two_lower;
    };
    EXPECT_NEAR(g(1.0), b.A, 1e-12 * b.A);
    EXPECT_LT(g(0.99), b.A);
    EXPECT_LT(g(1.01), b.A);
}

TEST_P(ByDim, TraceConstantRelation) {
    const int N = GetParam();
    const TraceConstants& t = cached_trace_constants(N, kSpec);
    const Exponents e = Exponents::make(N);
    EXPECT_NEAR(t.A_N / std::pow(t.B_N, e.two_lower / 2.0), N - 2.0, 1e-6 * (N - 2.0));
    EXPECT_GT(t.S0, 0.0);
}

TEST_P(ByDim, BubbleScalingInvariance) {
    const int N = GetParam();
    const BubbleConstants a = bubble_constants(N, kSpec, 1.0);
    const BubbleConstants b = bubble_constants(N, kSpec, 0.3);
    EXPECT_NEAR(a.K1 / b.K1, 1.0, 1e-7);
    EXPECT_NEAR(a.K2 / b.K2, 1.0, 1e-7);
    EXPECT_NEAR(a.K3 / b.K3, 1.0, 1e-7);
}

INSTANTIATE_TEST_SUITE_P(Dims, ByDim, ::testing::Range(3, 9));

TEST(TraceConstants, ThreeDimensionalValues) {
    // For N = 3 the trace exponent is 4 and int_{R^2} (1 + |x|^2)^{-2} = pi.
    const TraceConstants& t = cached_trace_constants(3, kSpec);
    EXPECT_NEAR(t.A_N, std::numbers::pi, 1e-9);
    EXPECT_NEAR(t.B_N, std::sqrt(std::numbers::pi), 1e-9);
}

class Expansion : public ::testing::TestWithParam<int> {};

TEST_P(Expansion, ClosedFormsAgreeWithQuadrature) {
    const ExpansionCoefficients& c = cached_expansion_coefficients(GetParam(), kSpec);
    EXPECT_LE(c.alpha_hat_N->rel_diff(), 1e-6);
    EXPECT_LE(c.d_hat_N->rel_diff(), 1e-6);
    EXPECT_LE(c.gamma_hat_N->rel_diff(), 1e-6);
    EXPECT_NEAR(*c.C3 / *c.C3_closed, 1.0, 1e-6);
    EXPECT_NEAR(*c.C6 / *c.C6_closed, 1.0, 1e-6);
}

TEST_P(Expansion, EnergyToMassRatio) {
    const int N = GetParam();
    const ExpansionCoefficients& c = cached_expansion_coefficients(N, kSpec);
    EXPECT_NEAR(*c.alpha_N / *c.d_N, N / 4.0, 1e-6 * N);
    EXPECT_GT(*c.beta_N, 0.0);
    EXPECT_GT(*c.gamma_N, 0.0);
}

TEST_P(Expansion, XiIdentity) {
    const int N = GetParam();
    const ExpansionCoefficients& c = cached_expansion_coefficients(N, kSpec);
    const double lhs = (c.alpha_hat_N->quadrature + xi_N(N, kSpec)) / c.d_hat_N->quadrature;
    EXPECT_NEAR(lhs / (N / 4.0 + (N - 4) / 8.0), 1.0, 1e-4);
}

INSTANTIATE_TEST_SUITE_P(Dims, Expansion, ::testing::Range(5, 10));

TEST(Expansion, C3AtFiveIsPiSquaredOverEight) {
    const ExpansionCoefficients& c = cached_expansion_coefficients(5, kSpec);
    EXPECT_NEAR(*c.C3, std::numbers::pi * std::numbers::pi / 8.0, 1e-8);
}

TEST(Expansion, AlphaHatSevenClosedForm) {
    const ExpansionCoefficients& c = cached_expansion_coefficients(7, kSpec);
    EXPECT_NEAR(c.alpha_hat_N->closed_form, 0.753624, 1e-6);
    EXPECT_LE(c.alpha_hat_N->rel_diff(), 1e-6);
}

TEST(Expansion, LowDimensionsOmitUndefinedCoefficients) {
    const ExpansionCoefficients& c4 = cached_expansion_coefficients(4, kSpec);
    EXPECT_FALSE(c4.alpha_N.has_value());
    EXPECT_TRUE(c4.gamma_N.has_value());
    EXPECT_TRUE(c4.gamma_hat_N.has_value());
    EXPECT_THROW(expansion_coefficients(3, kSpec), DomainError);
}

TEST(Theta, DecreasesFromOneInTau) {
    EXPECT_DOUBLE_EQ(theta_of_tau(5, 0.0, kSpec), 1.0);
    double prev = 1.0;
    for (double tau : {0.5, 1.0, 2.0}) {
        const double th = theta_of_tau(5, tau, kSpec);
        EXPECT_LT(th, prev);
        EXPECT_GT(th, 0.0);
        prev = th;
    }
}

TEST(Cache, ReturnsStableReference) {
    const BubbleConstants& a = cached_bubble_constants(6, kSpec);
    const BubbleConstants& b = cached_bubble_constants(6, kSpec);
    EXPECT_EQ(&a, &b);
}
