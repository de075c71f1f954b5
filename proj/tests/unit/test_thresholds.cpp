#include <gtest/gtest.h>

#include <cmath>

#include "halfspace/errors.hpp"
#include "halfspace/thresholds.hpp"

using namespace halfspace;

namespace {
const QuadratureSpec kSpec{};
}

TEST(LambdaHat, ClosedForm) {
    for (int N = 5; N <= 12; ++N) EXPECT_DOUBLE_EQ(lambda_hat(N), N / 4.0 + (N - 4) / 8.0);
    EXPECT_DOUBLE_EQ(lambda_hat(7), 2.125);
    EXPECT_DOUBLE_EQ(lambda_hat(4), 1.0);
}

TEST(LambdaBar, LowDimensions) {
    EXPECT_NEAR(lambda_bar(3, kSpec), 1.3090170, 1e-7);
    EXPECT_NEAR(lambda_hat(3), 1.3090170, 1e-7);
    EXPECT_DOUBLE_EQ(lambda_bar(4, kSpec), 1.0);
}

TEST(LambdaStar, FiveDimensionalChain) {
    const double ls = lambda_star(5, kSpec);
    EXPECT_GT(ls, 1.31384);
    EXPECT_GT(1.31384, 1.25);
    EXPECT_LT(ls, 1.5);
}

class Chain : public ::testing::TestWithParam<int> {};

TEST_P(Chain, AllChecksHold) {
    const int N = GetParam();
    const ThresholdReport r = verify_lambda_star_chain(N, kSpec);
    ASSERT_TRUE(r.lambda_star.has_value());
    EXPECT_GT(*r.lambda_star, N / 4.0);
    EXPECT_LT(*r.lambda_star, (N - 2) / 2.0);
    EXPECT_FALSE(r.chain_checks.empty());
    for (const ChainCheck& c : r.chain_checks) EXPECT_TRUE(c.satisfied) << "N=" << N << " " << c.name;
    EXPECT_TRUE(r.all_satisfied());
}

TEST_P(Chain, LambdaBarIsLambdaStar) {
    const int N = GetParam();
    EXPECT_DOUBLE_EQ(lambda_bar(N, kSpec), lambda_star(N, kSpec));
}

INSTANTIATE_TEST_SUITE_P(Dims, Chain, ::testing::Range(5, 13));

TEST(LambdaStar, Increasing) {
    double prev = 0.0;
    for (int N = 5; N <= 12; ++N) {
        const double v = lambda_star(N, kSpec);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(Thresholds, DomainChecks) {
    EXPECT_THROW(verify_lambda_star_chain(4, kSpec), DomainError);
    EXPECT_THROW(lambda_hat(2), DomainError);
    const ThresholdReport r = threshold_report(4, kSpec);
    EXPECT_FALSE(r.lambda_star.has_value());
    EXPECT_TRUE(r.all_satisfied());
}
