#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "halfspace/errors.hpp"
#include "halfspace/testfun.hpp"

using namespace halfspace;

TEST(Exponents, CriticalExponentRelation) {
    for (int N = 3; N <= kMaxDim; ++N) {
        const Exponents e = Exponents::make(N);
        EXPECT_DOUBLE_EQ(e.two_star, 2.0 * N / (N - 2.0));
        EXPECT_DOUBLE_EQ(e.two_lower, 2.0 * (N - 1.0) / (N - 2.0));
        // 2* - 2 = 2 (2_* - 2) makes the fiber equation quadratic.
        EXPECT_NEAR(e.two_star - 2.0, 2.0 * (e.two_lower - 2.0), 1e-14);
        EXPECT_NEAR(e.x_N0, std::sqrt(N / (N - 2.0)), 1e-15);
    }
    EXPECT_THROW(Exponents::make(2), DomainError);
}

TEST(Family, NamesRoundTrip) {
    for (Family f : {Family::U, Family::V, Family::UHat, Family::VHat}) {
        EXPECT_EQ(parse_family(family_name(f)), f);
    }
    EXPECT_THROW(parse_family("w"), DomainError);
}

TEST(Cutoff, ProfileAndSupport) {
    EXPECT_DOUBLE_EQ(cutoff_phi(0.0).value, 1.0);
    EXPECT_DOUBLE_EQ(cutoff_phi(1.0).value, 1.0);
    EXPECT_DOUBLE_EQ(cutoff_phi(2.0).value, 0.0);
    EXPECT_DOUBLE_EQ(cutoff_phi(3.0).value, 0.0);
    double prev = 1.0;
    for (double r = 1.0; r <= 2.0; r += 0.01) {
        const double v = cutoff_phi(r).value;
        EXPECT_LE(v, prev + 1e-15);
        prev = v;
    }
    EXPECT_NEAR(cutoff_phi(1.5).value, 0.5, 1e-14);
}

TEST(Cutoff, DerivativeMatchesFiniteDifference) {
    for (double r : {1.1, 1.3, 1.5, 1.77, 1.95}) {
        const double h = 1e-6;
        const double fd = (cutoff_phi(r + h).value - cutoff_phi(r - h).value) / (2.0 * h);
        EXPECT_NEAR(cutoff_phi(r).d_rho, fd, 1e-7);
        const double fd2 = (envelope_psi(r + h).value - envelope_psi(r - h).value) / (2.0 * h);
        EXPECT_NEAR(envelope_psi(r).d_rho, fd2, 1e-8);
    }
}

TEST(TestFunction, EvalDerivativesMatchFiniteDifference) {
    for (Family f : {Family::U, Family::V, Family::UHat, Family::VHat, Family::Gaussian}) {
        const TestFunction u(f, 5, 0.1);
        for (auto [r, xn] : {std::pair{0.3, 0.2}, std::pair{1.2, 0.5}, std::pair{0.05, 1.4}}) {
            const double h = 1e-6;
            const Eval e = u.eval(r, xn);
            EXPECT_NEAR(e.d_r, (u.value(r + h, xn) - u.value(r - h, xn)) / (2 * h), 1e-5 * (1 + std::abs(e.d_r)));
            EXPECT_NEAR(e.d_xn, (u.value(r, xn + h) - u.value(r, xn - h)) / (2 * h), 1e-5 * (1 + std::abs(e.d_xn)));
        }
    }
}

TEST(TestFunction, SupportRadius) {
    EXPECT_DOUBLE_EQ(TestFunction(Family::U, 5, 0.1).support_radius(), 2.0);
    EXPECT_TRUE(std::isinf(TestFunction(Family::V, 5, 0.1).support_radius()));
    EXPECT_EQ(TestFunction(Family::U, 5, 0.1).value(2.5, 0.0), 0.0);
}

TEST(TestFunction, RejectsBadEpsAndDim) {
    EXPECT_THROW(TestFunction(Family::U, 5, 0.0), DomainError);
    EXPECT_THROW(TestFunction(Family::U, 5, 0.7), DomainError);
    EXPECT_THROW(TestFunction(Family::U, 13, 0.1), DomainError);
}

TEST(Norms, GaussianWeightedClosedForms) {
    // With u = e^{-|x|^2/4}: int K u^2 = int e^{-|x|^2/4} = (4 pi)^{N/2}/2,
    // int K |grad u|^2 = (N/2) int K u^2.
    QuadratureSpec s;
    for (int N = 3; N <= 8; ++N) {
        const TestFunction g = TestFunction::gaussian(N);
        const double mass = std::pow(4.0 * std::numbers::pi, N / 2.0) / 2.0;
        EXPECT_NEAR(norm_Lp_K_volume(g, 2.0, s) / mass, 1.0, 1e-8);
        EXPECT_NEAR(norm_grad_K(g, s) / (N / 2.0 * mass), 1.0, 1e-8);
        // int_{R^{N-1}} e^{-r^2/4} = (4 pi)^{(N-1)/2}
        EXPECT_NEAR(norm_Lp_K_boundary(g, 2.0, s) / std::pow(4.0 * std::numbers::pi, (N - 1) / 2.0), 1.0, 1e-8);
    }
}

TEST(Norms, TraceBubbleBoundaryIsScaleInvariant) {
    QuadratureSpec s;
    for (int N : {3, 5, 7}) {
        const double p = Exponents::make(N).two_lower;
        const double a = norm_Lp_boundary(TestFunction(Family::TraceBubble, N, 1.0), p, s);
        const double b = norm_Lp_boundary(TestFunction(Family::TraceBubble, N, 0.25), p, s);
        EXPECT_NEAR(a / b, 1.0, 1e-7);
    }
}
