#include <gtest/gtest.h>

#include <cmath>

#include "halfspace/constants.hpp"
#include "halfspace/errors.hpp"
#include "halfspace/fiber.hpp"
#include "halfspace/thresholds.hpp"

using namespace halfspace;

namespace {

const QuadratureSpec kSpec{};

FiberCoefficients synthetic(int N, double E, double P, double V, double T, double lambda) {
    FiberCoefficients c;
    c.exps = Exponents::make(N);
    c.E = E;
    c.P = P;
    c.V = V;
    c.T = T;
    c.lambda = lambda;
    return c;
}

}  // namespace

TEST(MaximizeFiber, QuadraticClosedForm) {
    // With s = t^{2_*-2} the stationarity condition is a V s^2 + T s - (E - lambda P) = 0.
    for (int N : {3, 5, 8}) {
        const FiberCoefficients c = synthetic(N, 3.0, 0.5, 1.2, 0.7, 1.0);
        const FiberMax m = maximize_fiber(c);
        const double b = c.E - c.lambda * c.P;
        const double s = (-c.T + std::sqrt(c.T * c.T + 4.0 * c.V * b)) / (2.0 * c.V);
        EXPECT_NEAR(std::pow(m.t_star, c.exps.two_lower - 2.0), s, 1e-12);
        ASSERT_TRUE(m.closed_form_s.has_value());
        EXPECT_NEAR(*m.closed_form_s, s, 1e-13);
        EXPECT_NEAR(m.value, c.fiber(m.t_star), 1e-14);
    }
}

TEST(MaximizeFiber, IsAMaximum) {
    FiberCoefficients c = synthetic(5, 2.0, 1.0, 0.4, 0.9, 0.3);
    c.mu = 0.2;
    c.q = 2.6;
    c.Q = 1.1;
    const FiberMax m = maximize_fiber(c);
    EXPECT_FALSE(m.closed_form_s.has_value());
    EXPECT_NEAR(c.reduced_slope(m.t_star), 0.0, 1e-10);
    for (double f : {0.5, 0.9, 0.99, 1.01, 1.1, 2.0}) EXPECT_LE(c.fiber(f * m.t_star), m.value + 1e-14);
}

TEST(MaximizeFiber, GeometryErrorWithoutMountainPass) {
    EXPECT_THROW(maximize_fiber(synthetic(5, 1.0, 1.0, 1.0, 1.0, 2.0)), GeometryError);
}

TEST(MaximizeFiber, BareBubbleReachesTheLevel) {
    // E = K1, V = K2, T = K3 and no weight: the maximum is A at t = 1.
    for (int N = 3; N <= 8; ++N) {
        const BubbleConstants& b = cached_bubble_constants(N, kSpec);
        const FiberMax m = maximize_fiber(synthetic(N, b.K1, 0.0, b.K2, b.K3, 0.0));
        EXPECT_NEAR(m.t_star, 1.0, 1e-6);
        EXPECT_NEAR(m.value / b.A, 1.0, 1e-9);
    }
}

TEST(MeasureCoefficients, PositiveAndDomainChecked) {
    const FiberCoefficients c = measure_coefficients(Family::U, 5, 0.05, 2.0, kSpec);
    EXPECT_GT(c.E, 0.0);
    EXPECT_GT(c.P, 0.0);
    EXPECT_GT(c.V, 0.0);
    EXPECT_GT(c.T, 0.0);
    EXPECT_EQ(c.a, 1);
    EXPECT_EQ(measure_coefficients(Family::UHat, 5, 0.05, 2.0, kSpec).a, 0);
    EXPECT_THROW(measure_coefficients(Family::U, 5, 0.05, 2.7, kSpec), DomainError);
    EXPECT_THROW(measure_coefficients(Family::V, 5, 0.05, 2.0, kSpec), DomainError);
    EXPECT_THROW(measure_coefficients(Family::Gaussian, 5, 0.05, 2.0, kSpec), DomainError);
}

TEST(MeasureCoefficients, ApproachBubbleConstantsAsEpsShrinks) {
    const BubbleConstants& b = cached_bubble_constants(6, kSpec);
    double prev = INFINITY;
    for (double eps : {0.1, 0.05, 0.02}) {
        const FiberCoefficients c = measure_coefficients(Family::U, 6, eps, 2.0, kSpec);
        const double d = std::abs(c.E - b.K1) / b.K1;
        EXPECT_LT(d, prev);
        prev = d;
    }
    EXPECT_LT(prev, 1e-2);
}

TEST(Condition, FamilySelection) {
    EXPECT_EQ(condition_family(5, 1, 0.0), Family::U);
    EXPECT_EQ(condition_family(5, 0, 0.0), Family::UHat);
    EXPECT_EQ(condition_family(3, 1, 0.0), Family::V);
}

TEST(Condition, SixDimensionalSignFlip) {
    const double ls = lambda_star(6, kSpec);
    const ConditionReport above = check_condition_a1(6, ls + 0.05, 0.0, 2.0, kConditionEpsGrid, kSpec);
    const ConditionReport below = check_condition_a1(6, ls - 0.05, 0.0, 2.0, kConditionEpsGrid, kSpec);
    EXPECT_TRUE(above.met);
    EXPECT_FALSE(below.rows.back().passes);
    EXPECT_FALSE(below.met);
}

TEST(Condition, SevenDimensionalUhatAboveLambdaHat) {
    const ConditionReport r = check_condition_a0(7, 2.2, 0.0, 2.0, kConditionEpsGrid, kSpec);
    EXPECT_EQ(r.family, Family::UHat);
    EXPECT_TRUE(r.met);
}

TEST(Condition, RowsSortedAndThreadIndependent) {
    const std::vector<double> eps = {0.02, 0.1, 0.05};
    const ConditionReport a = check_condition_a1(5, 1.45, 0.0, 2.0, eps, kSpec, 1);
    const ConditionReport b = check_condition_a1(5, 1.45, 0.0, 2.0, eps, kSpec, 3);
    ASSERT_EQ(a.rows.size(), 3u);
    EXPECT_GT(a.rows[0].eps, a.rows[1].eps);
    EXPECT_GT(a.rows[1].eps, a.rows[2].eps);
    for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].value, b.rows[i].value);
}

TEST(Condition, BadEpsRejected) {
    EXPECT_THROW(check_condition_a1(5, 1.4, 0.0, 2.0, {}, kSpec), DomainError);
    EXPECT_THROW(check_condition_a1(5, 1.4, 0.0, 2.0, {0.7}, kSpec), DomainError);
}
