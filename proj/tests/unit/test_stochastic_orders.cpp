#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "orderstats/concordance.hpp"
#include "orderstats/copula.hpp"
#include "orderstats/errors.hpp"
#include "orderstats/order_statistics.hpp"
#include "orderstats/stochastic_orders.hpp"
#include "test_support.hpp"

using namespace orderstats;

namespace {

DistPtr exponential(double rate) { return std::make_shared<const Exponential>(rate); }

double witness(const OrderVerdict& v, const std::string& name) {
    for (const auto& w : v.witness) {
        if (w.name == name) {
            return w.value;
        }
    }
    ADD_FAILURE() << "no witness coordinate " << name;
    return 0.0;
}

}  // namespace

// --- ViolationTracker -------------------------------------------------------

TEST(ViolationTracker, KeepsFirstWorstPoint) {
    ViolationTracker tracker;
    tracker.observe(-1.0, {{"u", 0.1}});
    tracker.observe(0.5, {{"u", 0.2}});
    tracker.observe(0.5, {{"u", 0.3}});
    tracker.observe(0.2, {{"u", 0.4}});
    const OrderVerdict v = tracker.verdict("x", "g", 0.4);
    EXPECT_FALSE(v.holds);
    EXPECT_DOUBLE_EQ(v.max_violation, 0.5);
    EXPECT_DOUBLE_EQ(witness(v, "u"), 0.2);
    EXPECT_EQ(v.grid_points, 4u);
}

TEST(ViolationTracker, NegativeExcessHoldsWithZeroViolation) {
    ViolationTracker tracker;
    tracker.observe(-0.3, {{"u", 0.1}});
    tracker.observe(-0.1, {{"u", 0.2}});
    const OrderVerdict v = tracker.verdict("x", "g", 0.0);
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.max_violation, 0.0);
    EXPECT_DOUBLE_EQ(v.worst_excess, -0.1);
    EXPECT_DOUBLE_EQ(witness(v, "u"), 0.2);
}

TEST(GridSpec, DefaultsAndValidation) {
    const GridSpec grid;
    EXPECT_EQ(grid.u().size(), 199u);
    EXPECT_EQ(grid.pq().size(), 19u);
    EXPECT_DOUBLE_EQ(grid.u().front(), 0.005);
    EXPECT_THROW((GridSpec{1, 20}.validate()), InvalidInput);
    EXPECT_THROW((void)check_st(Exponential(1.0), Exponential(2.0), GridSpec{200, 1}), InvalidInput);
}

// --- check_st ---------------------------------------------------------------

TEST(CheckSt, ScaleFamily) {
    EXPECT_TRUE(check_st(Exponential(2.0), Exponential(1.0)).holds);
    const OrderVerdict reversed = check_st(Exponential(1.0), Exponential(2.0));
    EXPECT_FALSE(reversed.holds);
    EXPECT_GT(reversed.max_violation, 0.1);
}

TEST(CheckSt, Reflexive) {
    const OrderVerdict v = check_st(Exponential(1.5), Exponential(1.5));
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.max_violation, 0.0);
}

TEST(CheckSt, HomogeneousSpacingIsSmaller) {
    const RateVector rv({1.0, 2.0, 3.0});
    const OrderVerdict v = check_st(*spacing_law(rv.homogenized(), 1, 3).law(), *spacing_law(rv, 1, 3).law());
    EXPECT_TRUE(v.holds) << v.max_violation;
}

// --- check_disp -------------------------------------------------------------

TEST(CheckDisp, ScaleFamily) {
    EXPECT_TRUE(check_disp(Exponential(2.0), Exponential(1.0)).holds);
    EXPECT_FALSE(check_disp(Exponential(1.0), Exponential(2.0)).holds);
}

TEST(CheckDisp, ReflexiveWithFirstGridWitness) {
    const OrderVerdict v = check_disp(Exponential(1.0), Exponential(1.0));
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.max_violation, 0.0);
    EXPECT_EQ(v.worst_excess, 0.0);
    EXPECT_DOUBLE_EQ(witness(v, "u"), 0.005);
    EXPECT_EQ(v.grid_points, 198u);
}

TEST(CheckDisp, HomogeneousSpacingIsLessDispersed) {
    const RateVector rv({1.0, 2.0, 3.0});
    const OrderVerdict v = check_disp(*spacing_law(rv.homogenized(), 1, 3).law(), *spacing_law(rv, 1, 3).law());
    EXPECT_TRUE(v.holds) << v.max_violation;
}

TEST(CheckDisp, AntisymmetryProbe) {
    const Uniform u01(0.0, 1.0);
    const Uniform u23(2.0, 3.0);
    const Shifted shifted(exponential(1.0), 0.75);
    const Exponential e1(1.0);
    const Exponential e2(2.0);
    const std::vector<std::pair<const ContinuousDist*, const ContinuousDist*>> cases = {
        {&u01, &u23}, {&e1, &shifted}, {&e1, &e1}, {&e1, &e2}};
    int premise_met = 0;
    for (const auto& [f, g] : cases) {
        const OrderVerdict fg = check_disp(*f, *g);
        const OrderVerdict gf = check_disp(*g, *f);
        if (fg.max_violation == 0.0 && gf.max_violation == 0.0) {
            ++premise_met;
            const QuantileCurve curve = quantile_curve(*f, *g);
            const double first = curve.g_inv.front() - curve.f_inv.front();
            for (std::size_t k = 0; k < curve.u.size(); ++k) {
                ASSERT_EQ(curve.g_inv[k] - curve.f_inv[k], first);
            }
        }
    }
    EXPECT_GE(premise_met, 1);
    EXPECT_GT(check_disp(e2, e1).max_violation + check_disp(e1, e2).max_violation, 0.0);
}

// --- check_star -------------------------------------------------------------

TEST(CheckStar, ScaleFamilyHasConstantRatio) {
    const OrderVerdict v = check_star(Exponential(2.0), Exponential(1.0));
    EXPECT_TRUE(v.holds);
    EXPECT_LE(v.max_violation, 1e-12);
    const QuantileCurve curve = quantile_curve(Exponential(2.0), Exponential(1.0));
    for (std::size_t k = 0; k < curve.u.size(); ++k) {
        EXPECT_NEAR(curve.g_inv[k] / curve.f_inv[k], 2.0, 1e-12);
    }
}

TEST(CheckStar, Reflexive) {
    EXPECT_TRUE(check_star(Weibull(2.0), Weibull(2.0)).holds);
}

TEST(CheckStar, HomogeneousSpacingIsStarSmaller) {
    const RateVector rv({1.0, 2.0, 3.0});
    const OrderVerdict v = check_star(*spacing_law(rv.homogenized(), 1, 3).law(), *spacing_law(rv, 1, 3).law());
    EXPECT_TRUE(v.holds) << v.max_violation;
}

TEST(CheckStar, Errors) {
    std::vector<double> with_zeros(50, 0.0);
    with_zeros.push_back(1.0);
    EXPECT_THROW((void)check_star(Empirical(with_zeros), Exponential(1.0)), DegenerateInput);
    EXPECT_THROW((void)check_star(Uniform(-1.0, 1.0), Exponential(1.0)), InvalidInput);
}

TEST(CheckStar, LogBridge) {
    SampleStream stream(31, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const RateVector rv = test_support::random_rates(stream, test_support::random_between(stream, 2, 5));
        const std::size_t i = test_support::random_between(stream, 1, rv.size() - 1);
        const std::size_t j = test_support::random_between(stream, i + 1, rv.size());
        const auto f = spacing_law(rv.homogenized(), i, j).law();
        const auto g = spacing_law(rv, i, j).law();
        if (!check_star(*f, *g).holds) {
            continue;
        }
        const QuantileCurve curve = quantile_curve(*f, *g);
        for (std::size_t k = 0; k + 1 < curve.u.size(); ++k) {
            const double here = std::log(curve.g_inv[k]) - std::log(curve.f_inv[k]);
            const double next = std::log(curve.g_inv[k + 1]) - std::log(curve.f_inv[k + 1]);
            ASSERT_LE(here - next, 1e-9);
        }
    }
}

// Whenever star and st hold for the (Y-spacing, X-spacing) pair, disp holds.
TEST(OrderImplications, StarAndStImplyDisp) {
    SampleStream stream(3101, 0);
    const GridSpec grid;
    constexpr int kTrials = 60;
    int premise = 0;
    int counterexamples = 0;
    for (int trial = 0; trial < kTrials; ++trial) {
        const RateVector rv = test_support::random_rates(stream, test_support::random_between(stream, 2, 6));
        const std::size_t i = test_support::random_between(stream, 1, rv.size() - 1);
        const std::size_t j = test_support::random_between(stream, i + 1, rv.size());
        const auto y = spacing_law(rv.homogenized(), i, j).law();
        const auto x = spacing_law(rv, i, j).law();
        if (check_star(*y, *x, grid).holds && check_st(*y, *x, grid).holds) {
            ++premise;
            counterexamples += check_disp(*y, *x, grid).holds ? 0 : 1;
        }
    }
    EXPECT_EQ(counterexamples, 0);
    EXPECT_EQ(premise, kTrials);
}

// --- check_more_si ----------------------------------------------------------

TEST(CheckMoreSi, Reflexive) {
    const RateVector rv({1.0, 2.0, 3.0});
    const ShiftFamily family = conditional_family(rv, 2);
    const OrderVerdict v = check_more_si(family, *min_law(rv), family, *min_law(rv));
    EXPECT_TRUE(v.holds);
    EXPECT_EQ(v.max_violation, 0.0);
    EXPECT_EQ(v.grid_points, 171u * 199u);
}

TEST(CheckMoreSi, IndependentPairIsLeastSi) {
    const RateVector rv({0.5, 1.0, 2.0, 8.0});
    const IndependentFamily independent(exponential(1.0));
    const ShiftFamily family = conditional_family(rv, 3);
    const GridSpec grid{100, 10};
    for (const auto& row : more_si_curve(independent, Exponential(1.0), family, *min_law(rv), grid)) {
        ASSERT_NEAR(row.rhs, row.u, 1e-12);
    }
    EXPECT_TRUE(check_more_si(independent, Exponential(1.0), family, *min_law(rv), grid).holds);
    EXPECT_FALSE(check_more_si(family, *min_law(rv), independent, Exponential(1.0), grid).holds);
}

TEST(CheckMoreSi, HomogeneousPairIsMoreSi) {
    const RateVector rv({1.0, 2.0, 3.0});
    const RateVector hom = rv.homogenized();
    for (std::size_t i = 2; i <= 3; ++i) {
        const OrderVerdict v =
            check_more_si(conditional_family(rv, i), *min_law(rv), conditional_family(hom, i), *min_law(hom));
        EXPECT_TRUE(v.holds) << "i=" << i << " violation " << v.max_violation;
        const OrderVerdict swapped =
            check_more_si(conditional_family(hom, i), *min_law(hom), conditional_family(rv, i), *min_law(rv));
        EXPECT_FALSE(swapped.holds) << "i=" << i;
    }
}

// Independent sums: X2 <=disp X1 and Y1 <=disp Y2 make (X1 + Y1) | X1 the
// more SI pair.
TEST(CheckMoreSi, IndependentSumsSuite) {
    SampleStream stream(77, 0);
    const GridSpec grid{100, 10};
    for (int trial = 0; trial < 20; ++trial) {
        const double a1 = test_support::random_real(stream, 0.2, 3.0);
        const double a2 = a1 * test_support::random_real(stream, 1.0, 4.0);
        const double b2 = test_support::random_real(stream, 0.2, 3.0);
        const double b1 = b2 * test_support::random_real(stream, 1.0, 4.0);
        ASSERT_TRUE(check_disp(Exponential(a2), Exponential(a1), grid).holds);
        ASSERT_TRUE(check_disp(Exponential(b1), Exponential(b2), grid).holds);
        const ShiftFamily sum1(exponential(b1));
        const ShiftFamily sum2(exponential(b2));
        const OrderVerdict v = check_more_si(sum2, Exponential(a2), sum1, Exponential(a1), grid);
        ASSERT_TRUE(v.holds) << "a=(" << a1 << "," << a2 << ") b=(" << b1 << "," << b2 << ") "
                             << v.max_violation;
    }
}

TEST(CheckMoreSi, Deterministic) {
    const RateVector rv({0.5, 1.0, 2.0, 8.0});
    const RateVector hom = rv.homogenized();
    const GridSpec grid{100, 10};
    const auto run = [&] {
        return check_more_si(conditional_family(rv, 3), *min_law(rv), conditional_family(hom, 3), *min_law(hom),
                             grid);
    };
    const OrderVerdict a = run();
    const OrderVerdict b = run();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.witness.size(), 3u);
}

// --- check_pqd --------------------------------------------------------------

TEST(CheckPqd, FormulaCopulas) {
    const CopulaGrid independence = CopulaGrid::from_function(50, [](double u, double v) { return u * v; });
    const CopulaGrid comonotone =
        CopulaGrid::from_function(50, [](double u, double v) { return std::min(u, v); });
    EXPECT_TRUE(check_pqd(independence, comonotone).holds);
    EXPECT_TRUE(check_pqd(comonotone, comonotone).holds);
    const OrderVerdict reversed = check_pqd(comonotone, independence);
    EXPECT_FALSE(reversed.holds);
    EXPECT_NEAR(reversed.max_violation, 0.25, 1e-12);
    EXPECT_DOUBLE_EQ(witness(reversed, "u"), 0.5);
    EXPECT_DOUBLE_EQ(witness(reversed, "v"), 0.5);
}

TEST(CheckPqd, MismatchedLattices) {
    const auto uv = [](double u, double v) { return u * v; };
    EXPECT_THROW((void)check_pqd(CopulaGrid::from_function(50, uv), CopulaGrid::from_function(40, uv)),
                 InvalidInput);
}

TEST(CheckPqd, HeterogeneousCopulaIsBelowHomogeneous) {
    const RateVector rv({1.0, 2.0, 3.0});
    SampleStream stream(2024, 0);
    SampleStream s1 = stream.child(0);
    SampleStream s2 = stream.child(1);
    const auto hetero = empirical_copula(sample_order_pair(rv, 1, 2, s1, 100000));
    const auto homo = empirical_copula(sample_order_pair(rv.homogenized(), 1, 2, s2, 100000));
    const OrderVerdict v = check_pqd(hetero, homo);
    EXPECT_TRUE(v.holds) << v.max_violation << " vs " << v.tolerance;
    EXPECT_NEAR(v.tolerance, 2.0 * copula_confidence_radius(100000), 1e-15);
}
