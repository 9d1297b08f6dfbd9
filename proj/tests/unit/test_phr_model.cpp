#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "orderstats/errors.hpp"
#include "orderstats/numerics.hpp"
#include "orderstats/order_statistics.hpp"
#include "orderstats/phr_model.hpp"
#include "orderstats/stochastic_orders.hpp"
#include "test_support.hpp"

using namespace orderstats;

namespace {

DistPtr weibull2() { return std::make_shared<const Weibull>(2.0); }
DistPtr unit_exponential() { return std::make_shared<const Exponential>(1.0); }

}  // namespace

TEST(PHRModel, ComponentsAndHomogenization) {
    const PHRModel model(weibull2(), RateVector({1.0, 2.0, 3.0}));
    EXPECT_EQ(model.size(), 3u);
    const PHRModel iid = model.homogenized();
    EXPECT_TRUE(iid.parameters().is_homogeneous());
    EXPECT_DOUBLE_EQ(iid.parameters()[0], 2.0);
    for (double t : {0.1, 0.5, 1.3}) {
        EXPECT_NEAR(model.component(2)->survival(t), std::exp(-3.0 * t * t), 1e-15);
    }
    EXPECT_THROW(PHRModel(nullptr, RateVector({1.0, 2.0})), InvalidParameter);
}

TEST(PowerSurvival, InverseAndHazard) {
    const PowerSurvival law(weibull2(), 2.5);
    for (double u : {0.01, 0.3, 0.77, 0.999}) {
        const double x = law.quantile(u);
        EXPECT_NEAR(law.cdf(x), u, 1e-13);
        EXPECT_NEAR(x, std::sqrt(-std::log1p(-u) / 2.5), 1e-13);
    }
    EXPECT_NEAR(law.cumulative_hazard(0.8), 2.5 * 0.64, 1e-15);
    EXPECT_NEAR(law.inverse_cumulative_hazard(1.6), 0.8, 1e-15);
    EXPECT_NEAR(law.mean(), std::tgamma(1.5) / std::sqrt(2.5), 1e-9);
    EXPECT_THROW(PowerSurvival(weibull2(), 0.0), InvalidParameter);
}

TEST(PhrSample, ExponentialBaselineGivesExponentialComponents) {
    const PHRModel model(unit_exponential(), RateVector({1.0, 2.0, 3.0}));
    SampleStream a(5, 0);
    SampleStream b(5, 0);
    const SampleMatrix draws = phr_sample(model, a, 1000);
    ASSERT_EQ(draws.rows, 1000u);
    ASSERT_EQ(draws.cols, 3u);
    for (std::size_t r = 0; r < draws.rows; ++r) {
        for (std::size_t k = 0; k < 3; ++k) {
            ASSERT_EQ(draws.at(r, k), b.standard_exponential() / static_cast<double>(k + 1));
        }
    }
}

TEST(PhrSample, UnitParametersReproduceBaseline) {
    const PHRModel model(weibull2(), RateVector({1.0, 1.0}));
    SampleStream stream(6, 0);
    const std::size_t m = 100000;
    const SampleMatrix draws = phr_sample(model, stream, m);
    for (std::size_t k = 0; k < 2; ++k) {
        std::vector<double> column(m);
        for (std::size_t r = 0; r < m; ++r) {
            column[r] = draws.at(r, k);
        }
        EXPECT_LE(numerics::ks_distance(column, [](double x) { return Weibull(2.0).cdf(x); }),
                  numerics::ks_critical_value(m));
    }
}

TEST(PhrSample, TransformedMarginalsAreExponential) {
    const PHRModel model(weibull2(), RateVector({1.0, 2.0, 3.0}));
    SampleStream stream(7, 0);
    const std::size_t m = 100000;
    for (double d : phr_transformed_marginal_ks(model, stream, m)) {
        EXPECT_LE(d, numerics::ks_critical_value(m));
    }
}

TEST(PhrTransform, KnownBaselines) {
    const PHRModel exp_model(unit_exponential(), RateVector({1.0, 2.0}));
    const PHRModel weibull_model(weibull2(), RateVector({1.0, 2.0}));
    for (double x : {0.0, 0.25, 1.0, 3.5}) {
        EXPECT_DOUBLE_EQ(phr_transform(exp_model, x), x);
        EXPECT_NEAR(phr_transform(weibull_model, x), x * x, 1e-15 * (1.0 + x * x));
    }
}

TEST(PhrTransform, StrictlyIncreasing) {
    const PHRModel model(weibull2(), RateVector({1.0, 2.0}));
    SampleStream stream(8, 0);
    std::vector<double> xs(500);
    for (auto& x : xs) {
        x = 4.0 * stream.uniform_open();
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 1; k < xs.size(); ++k) {
        if (xs[k] > xs[k - 1]) {
            ASSERT_LT(phr_transform(model, xs[k - 1]), phr_transform(model, xs[k]));
        }
    }
}

TEST(PhrTransform, Errors) {
    const PHRModel model(std::make_shared<const Uniform>(0.0, 1.0), RateVector({1.0, 2.0}));
    EXPECT_THROW((void)phr_transform(model, 1.0), DegenerateInput);
    EXPECT_THROW((void)phr_transform(model, 2.0), DegenerateInput);
    EXPECT_THROW((void)phr_transform(PHRModel(weibull2(), RateVector({1.0, 2.0})), INFINITY), DomainError);
}

TEST(HazardScaleFamily, ExponentialBaselineIsShiftFamily) {
    const RateVector rv({1.0, 2.0, 3.0});
    const auto spacing = spacing_law(rv, 1, 3).law();
    const HazardScaleFamily hazard(spacing, unit_exponential());
    const ShiftFamily shift(spacing);
    for (double x : {0.0, 0.2, 0.9}) {
        for (double t : {0.3, 1.0, 2.0}) {
            EXPECT_EQ(hazard.cdf(x, t), shift.cdf(x, t));
        }
        EXPECT_EQ(hazard.quantile(x, 0.4), shift.quantile(x, 0.4));
    }
}

TEST(HazardScaleFamily, QuantileInvertsCdf) {
    const HazardScaleFamily family(spacing_law(RateVector({1.0, 2.0, 3.0}), 1, 2).law(), weibull2());
    for (double x : {0.0, 0.3, 1.1}) {
        for (double u : {0.05, 0.5, 0.95}) {
            const double t = family.quantile(x, u);
            EXPECT_GE(t, x);
            EXPECT_NEAR(family.cdf(x, t), u, 1e-10);
            EXPECT_NEAR(family.at(x)->cdf(t), u, 1e-10);
        }
        EXPECT_EQ(family.cdf(x, x), 0.0);
    }
}

// Integrating H_x(t) against the law of the minimum recovers P(X_{i:n} <= t),
// which on the hazard scale is the exponential order-statistic cdf at R(t).
TEST(HazardScaleFamily, LawOfTotalProbability) {
    const RateVector rv({1.0, 2.0, 3.0});
    const PHRModel model(weibull2(), rv);
    for (std::size_t i = 2; i <= 3; ++i) {
        const HazardScaleFamily family(spacing_law(rv, 1, i).law(), weibull2());
        for (double t : {0.3, 0.7, 1.2}) {
            const double total = numerics::adaptive_simpson(
                [&](double x) {
                    const double density = 2.0 * rv.total_rate() * x * std::exp(-rv.total_rate() * x * x);
                    return family.cdf(x, t) * density;
                },
                0.0, t, 1e-11);
            EXPECT_NEAR(total, order_stat_cdf(rv, i, phr_transform(model, t)), 1e-8);
        }
    }
}

TEST(PhrSiCheck, WeibullBaselineHolds) {
    const PHRModel model(weibull2(), RateVector({1.0, 2.0, 3.0}));
    for (std::size_t i = 2; i <= 3; ++i) {
        const PhrSiReport report = phr_si_check(model, i, GridSpec{}, 100000, SampleStream(9, i));
        EXPECT_TRUE(report.holds()) << "i=" << i << " si violation " << report.si.max_violation;
        EXPECT_TRUE(report.copulas_identical);
        EXPECT_EQ(report.copula_invariance_heterogeneous.max_violation, 0.0);
        EXPECT_EQ(report.copula_invariance_homogeneous.max_violation, 0.0);
        EXPECT_EQ(report.si.order_name, "phr-si");
    }
}

TEST(PhrSiCheck, ExponentialBaselineReducesToDirectCheck) {
    const RateVector rv({0.5, 1.0, 2.0, 8.0});
    const PHRModel model(unit_exponential(), rv);
    const GridSpec grid{100, 10};
    for (std::size_t i = 2; i <= 4; ++i) {
        const PhrSiReport report = phr_si_check(model, i, grid, 1000, SampleStream(10, 0));
        OrderVerdict direct = check_more_si(conditional_family(rv, i), *min_law(rv),
                                            conditional_family(rv.homogenized(), i), *min_law(rv.homogenized()), grid);
        direct.order_name = report.si.order_name;
        EXPECT_EQ(report.si, direct) << "i=" << i;
    }
}

TEST(PhrSiCheck, DeterministicAndValidated) {
    const PHRModel model(weibull2(), RateVector({1.0, 2.0, 3.0}));
    const GridSpec grid{50, 8};
    const PhrSiReport a = phr_si_check(model, 2, grid, 2000, SampleStream(11, 0));
    const PhrSiReport b = phr_si_check(model, 2, grid, 2000, SampleStream(11, 0));
    EXPECT_EQ(a.si, b.si);
    EXPECT_EQ(a.copula_invariance_heterogeneous, b.copula_invariance_heterogeneous);
    EXPECT_THROW((void)phr_si_check(model, 1, grid, 2000, SampleStream(11, 0)), InvalidInput);
    EXPECT_THROW((void)phr_si_check(model, 4, grid, 2000, SampleStream(11, 0)), InvalidInput);
}

TEST(OrderPairs, SortsRows) {
    SampleMatrix sample;
    sample.rows = 2;
    sample.cols = 3;
    sample.data = {3.0, 1.0, 2.0, 0.5, 0.7, 0.1};
    const auto pairs = order_pairs(sample, 1, 3);
    EXPECT_EQ(pairs[0], (std::pair<double, double>{1.0, 3.0}));
    EXPECT_EQ(pairs[1], (std::pair<double, double>{0.1, 0.7}));
    EXPECT_THROW((void)order_pairs(sample, 0, 2), InvalidInput);
}
