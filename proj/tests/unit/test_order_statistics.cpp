#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "orderstats/concordance.hpp"
#include "orderstats/errors.hpp"
#include "orderstats/numerics.hpp"
#include "orderstats/oracle.hpp"
#include "orderstats/order_statistics.hpp"
#include "test_support.hpp"

using namespace orderstats;

namespace {

// Frozen with 30-digit mpmath (inclusion-exclusion and n!-order enumeration
// with high-precision partial fractions).
constexpr double kMax12At07 = 0.37927416051996591857;        // rates (1,2), i = 2, t = 0.7
constexpr double kSecond123At04 = 0.54300989343535480973;    // rates (1,2,3), i = 2, t = 0.4
constexpr double kSpacing123_13At05 = 0.30809741697469796243;
constexpr double kSpacing05128_24At08 = 0.25336070261961650008;

}  // namespace

// --- RateVector -------------------------------------------------------------

TEST(RateVector, TotalsAndHomogenization) {
    const RateVector rv({1.0, 2.0, 3.0});
    EXPECT_DOUBLE_EQ(rv.total_rate(), 6.0);
    EXPECT_DOUBLE_EQ(rv.mean_rate(), 2.0);
    EXPECT_FALSE(rv.is_homogeneous());
    const RateVector hom = rv.homogenized();
    EXPECT_TRUE(hom.is_homogeneous());
    EXPECT_EQ(hom.size(), 3u);
    EXPECT_DOUBLE_EQ(hom[1], 2.0);
}

TEST(RateVector, RejectsInvalidRates) {
    EXPECT_THROW(RateVector({1.0}), InvalidParameter);
    EXPECT_THROW(RateVector({1.0, 0.0}), InvalidParameter);
    EXPECT_THROW(RateVector({1.0, -2.0}), InvalidParameter);
    EXPECT_THROW(RateVector({1.0, INFINITY}), InvalidParameter);
}

// --- min_law ----------------------------------------------------------------

TEST(MinLaw, SumsTheRates) {
    const auto law = min_law(RateVector({1.0, 2.0, 3.0}));
    const auto& e = dynamic_cast<const Exponential&>(*law);
    EXPECT_DOUBLE_EQ(e.rate(), 6.0);
    EXPECT_DOUBLE_EQ(dynamic_cast<const Exponential&>(*min_law(RateVector({2.0, 2.0, 2.0}))).rate(), 6.0);
}

TEST(MinLaw, InvariantUnderHomogenization) {
    const RateVector rv({0.5, 1.0, 2.0, 8.0});
    const auto a = min_law(rv);
    const auto b = min_law(rv.homogenized());
    for (double t : {0.01, 0.1, 0.3, 1.0}) {
        EXPECT_DOUBLE_EQ(a->cdf(t), b->cdf(t));
    }
}

// --- order_stat_cdf ---------------------------------------------------------

TEST(OrderStatCdf, MaximumOfTwo) {
    const RateVector rv({1.0, 2.0});
    EXPECT_NEAR(order_stat_cdf(rv, 2, 0.7), kMax12At07, 1e-15);
    for (double t : {0.05, 0.5, 2.0, 6.0}) {
        EXPECT_NEAR(order_stat_cdf(rv, 2, t), 1.0 - std::exp(-t) - std::exp(-2 * t) + std::exp(-3 * t), 1e-15);
    }
}

TEST(OrderStatCdf, MinimumIsExponentialWithTotalRate) {
    const RateVector rv({0.5, 1.0, 2.0, 8.0});
    for (double t : {0.01, 0.2, 1.0}) {
        EXPECT_NEAR(order_stat_cdf(rv, 1, t), -std::expm1(-11.5 * t), 1e-15);
    }
}

TEST(OrderStatCdf, MiddleOrderStatistic) {
    EXPECT_NEAR(order_stat_cdf(RateVector({1.0, 2.0, 3.0}), 2, 0.4), kSecond123At04, 1e-15);
}

TEST(OrderStatCdf, MatchesMonteCarlo) {
    const RateVector rv({0.5, 1.0, 2.0, 8.0});
    SampleStream stream(4, 0);
    const std::size_t m = 100000;
    std::vector<double> third;
    third.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        third.push_back(draw_order_statistics(rv, stream)[2]);
    }
    EXPECT_LE(numerics::ks_distance(third, [&](double t) { return order_stat_cdf(rv, 3, t); }),
              numerics::ks_critical_value(m));
}

TEST(OrderStatCdf, IndexErrors) {
    const RateVector rv({1.0, 2.0});
    EXPECT_THROW((void)order_stat_cdf(rv, 0, 1.0), InvalidInput);
    EXPECT_THROW((void)order_stat_cdf(rv, 3, 1.0), InvalidInput);
    EXPECT_EQ(order_stat_cdf(rv, 2, -1.0), 0.0);
}

TEST(OrderStatCdf, ExactRouteMatchesConvolutionRoute) {
    SampleStream stream(21, 0);
    for (int trial = 0; trial < 8; ++trial) {
        const RateVector rv = test_support::random_rates(stream, test_support::random_between(stream, 2, 5));
        const std::size_t i = test_support::random_between(stream, 2, rv.size());
        const auto law = spacing_law(rv, 1, i).law();
        for (double u : {0.05, 0.25, 0.5, 0.75, 0.95}) {
            const double t = law->quantile(u) + min_law(rv)->quantile(u);
            ASSERT_NEAR(order_stat_cdf(rv, i, t), order_stat_cdf_by_convolution(rv, i, t), 1e-8);
        }
    }
}

// --- spacing_law ------------------------------------------------------------

TEST(SpacingLaw, TwoRatesGiveExponentialMixture) {
    const SpacingMixture law = spacing_law(RateVector({1.0, 2.0}), 1, 2);
    ASSERT_EQ(law.chains().size(), 2u);
    // Chains sorted by stage sequence: {Lambda = 1}, then {Lambda = 2}.
    EXPECT_DOUBLE_EQ(law.chains()[0].stages.front(), 1.0);
    EXPECT_NEAR(law.chains()[0].weight, 2.0 / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(law.chains()[1].stages.front(), 2.0);
    EXPECT_NEAR(law.chains()[1].weight, 1.0 / 3.0, 1e-15);
    for (double t : {0.1, 1.0, 3.0}) {
        EXPECT_NEAR(law.cdf(t), 1.0 / 3.0 * -std::expm1(-2 * t) + 2.0 / 3.0 * -std::expm1(-t), 1e-15);
    }
}

TEST(SpacingLaw, HomogeneousCollapsesToRenyiStages) {
    const SpacingMixture law = spacing_law(RateVector({1.0, 1.0, 1.0}), 1, 3);
    ASSERT_EQ(law.chains().size(), 1u);
    EXPECT_NEAR(law.chains()[0].weight, 1.0, 1e-15);
    EXPECT_EQ(law.chains()[0].stages, (std::vector<double>{2.0, 1.0}));

    for (std::size_t n = 2; n <= 7; ++n) {
        const RateVector rv = RateVector::homogeneous(n, 1.7);
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t j = i + 1; j <= n; ++j) {
                const SpacingMixture s = spacing_law(rv, i, j);
                ASSERT_EQ(s.chains().size(), 1u);
                ASSERT_EQ(s.chains()[0].stages.size(), j - i);
                for (std::size_t k = 0; k < j - i; ++k) {
                    ASSERT_NEAR(s.chains()[0].stages[k], static_cast<double>(n - i - k) * 1.7, 1e-12);
                }
            }
        }
    }
}

TEST(SpacingLaw, FrozenValues) {
    EXPECT_NEAR(spacing_law(RateVector({1.0, 2.0, 3.0}), 1, 3).cdf(0.5), kSpacing123_13At05, 1e-14);
    EXPECT_NEAR(spacing_law(RateVector({0.5, 1.0, 2.0, 8.0}), 2, 4).cdf(0.8), kSpacing05128_24At08, 1e-14);
}

TEST(SpacingLaw, StagesStrictlyDecreaseAndWeightsSumToOne) {
    SampleStream stream(17, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const RateVector rv = test_support::random_rates(stream, test_support::random_between(stream, 2, 7));
        const std::size_t i = test_support::random_between(stream, 1, rv.size() - 1);
        const std::size_t j = test_support::random_between(stream, i + 1, rv.size());
        const SpacingMixture law = spacing_law(rv, i, j);
        double total = 0.0;
        for (const auto& chain : law.chains()) {
            total += chain.weight;
            ASSERT_EQ(chain.stages.size(), j - i);
            for (std::size_t k = 1; k < chain.stages.size(); ++k) {
                ASSERT_GT(chain.stages[k - 1], chain.stages[k]);
            }
        }
        ASSERT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(SpacingLaw, TiedRatesMergeChains) {
    const SpacingMixture tied = spacing_law(RateVector({1.0, 1.0, 2.0}), 1, 3);
    // Surviving sets {1,1}, {1,2}, {1,2}: two distinct stage sequences after merging.
    double total = 0.0;
    for (const auto& chain : tied.chains()) {
        total += chain.weight;
    }
    EXPECT_NEAR(total, 1.0, 1e-15);
    const oracle::PermutationSpacingOracle brute(RateVector({1.0, 1.0, 2.0}), 1, 3);
    for (double t : {0.1, 0.5, 1.5, 4.0}) {
        EXPECT_NEAR(tied.cdf(t), brute.cdf(t), 1e-12);
    }
}

TEST(SpacingLaw, MatchesPermutationOracle) {
    SampleStream stream(2718, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = test_support::random_between(stream, 2, 6);
        const RateVector rv = test_support::random_rates(stream, n);
        const std::size_t i = test_support::random_between(stream, 1, n - 1);
        const std::size_t j = test_support::random_between(stream, i + 1, n);
        const SpacingMixture law = spacing_law(rv, i, j);
        const oracle::PermutationSpacingOracle brute(rv, i, j);
        ASSERT_NEAR(brute.total_weight(), 1.0, 1e-12);
        for (double u : numerics::probability_grid(20)) {
            const double t = law.quantile(u);
            ASSERT_NEAR(law.cdf(t), brute.cdf(t), 1e-12) << "n=" << n << " i=" << i << " j=" << j;
        }
    }
}

TEST(SpacingLaw, MatchesMonteCarlo) {
    const RateVector rv({0.5, 1.0, 2.0, 8.0});
    SampleStream stream(6, 0);
    const std::size_t m = 100000;
    const SpacingMixture law = spacing_law(rv, 2, 4);
    const auto xs = sample_spacing(rv, 2, 4, stream, m);
    EXPECT_LE(numerics::ks_distance(xs, [&](double t) { return law.cdf(t); }), numerics::ks_critical_value(m));
}

TEST(SpacingLaw, IndexAndSizeErrors) {
    const RateVector rv({1.0, 2.0, 3.0});
    EXPECT_THROW((void)spacing_law(rv, 2, 2), InvalidInput);
    EXPECT_THROW((void)spacing_law(rv, 0, 2), InvalidInput);
    EXPECT_THROW((void)spacing_law(rv, 2, 4), InvalidInput);
    EXPECT_THROW((void)spacing_law(RateVector::homogeneous(17, 1.0), 1, 2), ExactLawTooLarge);
    // Every chain of surviving sets from size 11 down to 1 is counted before merging.
    EXPECT_THROW((void)spacing_law(RateVector::homogeneous(12, 1.0), 1, 12), ExactLawTooLarge);
}

TEST(SpacingMoments, AgreeWithMixtureMoments) {
    SampleStream stream(99, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const RateVector rv = test_support::random_rates(stream, test_support::random_between(stream, 2, 7));
        const std::size_t i = test_support::random_between(stream, 1, rv.size() - 1);
        const std::size_t j = test_support::random_between(stream, i + 1, rv.size());
        const SpacingMixture law = spacing_law(rv, i, j);
        const SpacingMoments moments = spacing_moments(rv, i, j);
        ASSERT_NEAR(moments.mean, law.mean(), 1e-12 * law.mean());
        ASSERT_NEAR(moments.variance, law.variance(), 1e-10 * law.variance());
    }
}

TEST(SpacingMoments, ScaleBeyondChainBudget) {
    const RateVector rv = RateVector::homogeneous(16, 1.0);
    const SpacingMoments m = spacing_moments(rv, 1, 16);
    double mean = 0.0;
    double var = 0.0;
    for (int k = 1; k <= 15; ++k) {
        mean += 1.0 / k;
        var += 1.0 / (k * k);
    }
    EXPECT_NEAR(m.mean, mean, 1e-12);
    EXPECT_NEAR(m.variance, var, 1e-12);
}

// --- conditional_family -----------------------------------------------------

TEST(ConditionalFamily, ZeroShiftIsSpacingLaw) {
    const RateVector rv({1.0, 2.0, 3.0});
    const ShiftFamily family = conditional_family(rv, 3);
    const SpacingMixture spacing = spacing_law(rv, 1, 3);
    for (double t : {0.1, 0.4, 1.0, 2.5}) {
        EXPECT_EQ(family.cdf(0.0, t), spacing.cdf(t));
        EXPECT_EQ(family.at(0.0)->cdf(t), spacing.cdf(t));
    }
}

TEST(ConditionalFamily, ShiftStructure) {
    const ShiftFamily family = conditional_family(RateVector({0.5, 1.0, 2.0, 8.0}), 3);
    for (double x : {0.0, 0.05, 0.3, 1.2}) {
        for (double t : {0.1, 0.5, 1.0, 3.0}) {
            EXPECT_EQ(family.cdf(x, t), family.cdf(0.0, t - x));
        }
        EXPECT_DOUBLE_EQ(family.quantile(x, 0.4), x + family.quantile(0.0, 0.4));
    }
}

TEST(ConditionalFamily, LawOfTotalProbability) {
    const RateVector rv({1.0, 2.0, 3.0});
    for (std::size_t i = 2; i <= 3; ++i) {
        const ShiftFamily family = conditional_family(rv, i);
        const double rate = rv.total_rate();
        for (double t : {0.2, 0.6, 1.5}) {
            const double total = numerics::adaptive_simpson(
                [&](double x) { return family.cdf(x, t) * rate * std::exp(-rate * x); }, 0.0, t, 1e-11);
            EXPECT_NEAR(total, order_stat_cdf(rv, i, t), 1e-8);
        }
    }
}

TEST(ConditionalFamily, RejectsMinimum) {
    EXPECT_THROW((void)conditional_family(RateVector({1.0, 2.0}), 1), InvalidInput);
    EXPECT_THROW((void)conditional_family(RateVector({1.0, 2.0}), 3), InvalidInput);
}

// --- exact_min_corr ---------------------------------------------------------

TEST(ExactMinCorr, ClosedForms) {
    EXPECT_NEAR(exact_min_corr(RateVector({1.0, 2.0}), 2), 2.0 / std::sqrt(33.0), 1e-14);
    EXPECT_NEAR(exact_min_corr(RateVector({1.5, 1.5}), 2), 1.0 / std::sqrt(5.0), 1e-14);
}

TEST(ExactMinCorr, HomogeneousDecomposition) {
    const RateVector rv = RateVector::homogeneous(5, 0.8);
    for (std::size_t i = 2; i <= 5; ++i) {
        const double var_min = 1.0 / (4.0 * 4.0);
        double var_spacing = 0.0;
        for (std::size_t k = 1; k < i; ++k) {
            const double stage = static_cast<double>(5 - k) * 0.8;
            var_spacing += 1.0 / (stage * stage);
        }
        EXPECT_NEAR(exact_min_corr(rv, i), std::sqrt(var_min / (var_min + var_spacing)), 1e-14);
    }
}

TEST(ExactMinCorr, MatchesMonteCarlo) {
    const RateVector rv({1.0, 2.0});
    SampleStream stream(1, 0);
    const auto pairs = sample_order_pair(rv, 1, 2, stream, 1'000'000);
    EXPECT_NEAR(pearson_corr(pairs), 2.0 / std::sqrt(33.0), 0.005);
}

TEST(ExactMinCorr, IndexErrors) {
    EXPECT_THROW((void)exact_min_corr(RateVector({1.0, 2.0}), 1), InvalidInput);
    EXPECT_THROW((void)exact_min_corr(RateVector({1.0, 2.0}), 3), InvalidInput);
}
