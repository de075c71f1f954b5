#include <gtest/gtest.h>

#include "halfspace/errors.hpp"
#include "halfspace/region.hpp"
#include "halfspace/thresholds.hpp"

using namespace halfspace;

namespace {

const QuadratureSpec kSpec{};

ProblemParams params(int N, int a, double q, double lambda, double mu) {
    ProblemParams p;
    p.N = N;
    p.a = a;
    p.q = q;
    p.lambda = lambda;
    p.mu = mu;
    return p;
}

Mu1Bracket bracket(double lo, double hi) {
    Mu1Bracket b;
    b.lower = lo;
    b.upper = hi;
    return b;
}

}  // namespace

TEST(Classify, HalfDimensionAndNonnegativeMuIsNonexistence) {
    const double ls = region_lambda_star(4, 1, kSpec);
    for (double mu : {0.0, 0.3, 1.0}) {
        EXPECT_EQ(classify(params(4, 1, 2.5, 2.0, mu), bracket(0.0, 1.0), ls).verdict, Verdict::NoPositive);
    }
}

TEST(Classify, BelowQuarterDimensionWithoutBoundaryTerm) {
    const double ls = region_lambda_star(5, 1, kSpec);
    const RegionVerdict v = classify(params(5, 1, 2.0, 1.0, 0.0), bracket(0.0, 2.0), ls);
    EXPECT_EQ(v.verdict, Verdict::NoPositive);
    EXPECT_FALSE(v.conflict());
}

TEST(Classify, AboveThresholdExists) {
    const double ls = region_lambda_star(5, 1, kSpec);
    EXPECT_EQ(classify(params(5, 1, 2.0, 1.45, 0.0), bracket(0.0, 2.0), ls).verdict, Verdict::ExistsPositive);
    EXPECT_EQ(classify(params(5, 1, 2.0, 1.3, 0.0), bracket(0.0, 2.0), ls).verdict, Verdict::Unknown);
}

TEST(Classify, OpenEndpointsAreUnknown) {
    const double ls = region_lambda_star(5, 1, kSpec);
    EXPECT_EQ(classify(params(5, 1, 2.0, ls, 0.0), bracket(0.0, 2.0), ls).verdict, Verdict::Unknown);
}

TEST(Classify, NegativeLambdaWithPositiveMuIsUnknown) {
    EXPECT_EQ(classify(params(4, 1, 2.5, -0.5, 0.5), bracket(0.0, 1.0), 1.0).verdict, Verdict::Unknown);
}

TEST(Classify, MuAboveBracketIsNonexistence) {
    // q = 2 boundary term with mu >= mu_1 is certified only from the bracket's upper end.
    const double ls = region_lambda_star(5, 1, kSpec);
    EXPECT_EQ(classify(params(5, 1, 2.0, 0.5, 1.6), bracket(1.0, 1.5), ls).verdict, Verdict::NoPositive);
    EXPECT_NE(classify(params(5, 1, 2.0, 0.5, 1.2), bracket(1.0, 1.5), ls).verdict, Verdict::NoPositive);
}

TEST(Classify, ShrinkingTheBracketNeverFlipsADefiniteVerdict) {
    for (int N : {4, 5, 7}) {
        for (int a : {0, 1}) {
            const double q = N == 7 ? 2.2 : 2.0;
            const double ls = region_lambda_star(N, a, kSpec);
            for (double lambda = -0.5; lambda <= N / 2.0 + 1.0; lambda += 0.125) {
                for (double mu = -1.0; mu <= 2.0; mu += 0.125) {
                    const Verdict wide = classify(params(N, a, q, lambda, mu), bracket(0.0, 2.0), ls).verdict;
                    const Verdict narrow = classify(params(N, a, q, lambda, mu), bracket(1.0, 1.4), ls).verdict;
                    if (wide != Verdict::Unknown) EXPECT_EQ(narrow, wide) << N << " " << lambda << " " << mu;
                }
            }
        }
    }
}

TEST(Params, Validation) {
    EXPECT_THROW(params(7, 0, 2.5, 1.0, 0.0).validate(), DomainError);
    EXPECT_THROW(params(4, 2, 2.5, 1.0, 0.0).validate(), DomainError);
    EXPECT_THROW(params(4, 1, 1.5, 1.0, 0.0).validate(), DomainError);
    EXPECT_NO_THROW(params(7, 0, 2.2, 1.0, 0.0).validate());
    EXPECT_THROW(bracket(1.0, 0.5).validate(), DomainError);
}

TEST(GridAxis, ParseAndEndpoints) {
    const GridAxis g = GridAxis::parse("0:2.5:0.1");
    EXPECT_EQ(g.steps, 26);
    EXPECT_DOUBLE_EQ(g.at(0), 0.0);
    EXPECT_DOUBLE_EQ(g.at(25), 2.5);
    EXPECT_THROW(GridAxis::parse("0:1"), DomainError);
    EXPECT_THROW(GridAxis::parse("0:1:-0.1"), DomainError);
    EXPECT_THROW(GridAxis::parse("a:1:0.1"), DomainError);
}

class Soundness : public ::testing::TestWithParam<std::tuple<int, int, double>> {};

TEST_P(Soundness, NoConflictsAndAxisPattern) {
    const auto [N, a, q] = GetParam();
    const double ls = region_lambda_star(N, a, kSpec);
    GridAxis lam;
    lam.lo = 0.0;
    lam.hi = N / 2.0 + 1.0;
    lam.steps = 51;
    GridAxis mu;
    mu.lo = -1.0;
    mu.hi = 1.0;
    mu.steps = 41;
    const auto rows = emit_grid(params(N, a, q, 0, 0), lam, mu, bracket(0.0, 1.5), ls, 2);
    ASSERT_EQ(rows.size(), 51u * 41u);
    for (const GridRow& r : rows) EXPECT_FALSE(r.conflict) << r.lambda << " " << r.mu;
    const AxisPattern p = check_mu_zero_axis(rows, ls);
    EXPECT_TRUE(p.ok) << p.detail;
}

INSTANTIATE_TEST_SUITE_P(Cases, Soundness,
                         ::testing::Values(std::tuple{4, 1, 2.5}, std::tuple{5, 1, 2.0}, std::tuple{7, 0, 2.2}));

TEST(Grid, DeterministicAcrossThreadCounts) {
    const GridAxis lam = GridAxis::parse("0:2.5:0.1");
    const GridAxis mu = GridAxis::parse("0:1:0.1");
    const auto a = emit_grid(params(4, 1, 2.5, 0, 0), lam, mu, bracket(0.0, 1.0), 1.0, 1);
    const auto b = emit_grid(params(4, 1, 2.5, 0, 0), lam, mu, bracket(0.0, 1.0), 1.0, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].lambda, b[i].lambda);
        EXPECT_EQ(a[i].mu, b[i].mu);
        EXPECT_EQ(a[i].verdict, b[i].verdict);
        EXPECT_EQ(a[i].clause, b[i].clause);
    }
}
