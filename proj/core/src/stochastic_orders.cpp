#include "orderstats/stochastic_orders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orderstats/errors.hpp"
#include "orderstats/numerics.hpp"

namespace orderstats {

// --- ViolationTracker -------------------------------------------------------

void ViolationTracker::observe(double excess, std::vector<WitnessCoordinate> point) {
    ++count_;
    if (!seen_ || excess > worst_) {
        seen_ = true;
        worst_ = excess;
        witness_ = std::move(point);
    }
}

OrderVerdict ViolationTracker::verdict(std::string order_name, std::string grid,
                                       double tolerance) const {
    OrderVerdict v;
    v.order_name = std::move(order_name);
    v.worst_excess = seen_ ? worst_ : 0.0;
    v.max_violation = std::max(0.0, v.worst_excess);
    v.holds = v.max_violation <= tolerance;
    v.witness = witness_;
    v.grid = std::move(grid);
    v.grid_points = count_;
    v.tolerance = tolerance;
    return v;
}

// --- GridSpec ---------------------------------------------------------------

std::vector<double> GridSpec::u() const { return numerics::probability_grid(u_resolution); }

std::vector<double> GridSpec::pq() const { return numerics::probability_grid(si_resolution); }

std::string GridSpec::describe() const {
    return "u=k/" + std::to_string(u_resolution) + " (" + std::to_string(u_resolution - 1) +
           " points); p,q=k/" + std::to_string(si_resolution) + " (" +
           std::to_string(si_resolution - 1) + " points, p<q)";
}

void GridSpec::validate() const {
    if (u_resolution < 2 || si_resolution < 2) {
        throw InvalidInput("grid resolutions must be at least 2");
    }
}

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DegenerateInput(std::string(what) + " is not finite on the grid");
    }
}

}  // namespace

// --- Quantile-based orders --------------------------------------------------

QuantileCurve quantile_curve(const ContinuousDist& f, const ContinuousDist& g, const GridSpec& grid) {
    grid.validate();
    QuantileCurve curve;
    curve.u = grid.u();
    curve.f_inv.reserve(curve.u.size());
    curve.g_inv.reserve(curve.u.size());
    for (double u : curve.u) {
        curve.f_inv.push_back(f.quantile(u));
        curve.g_inv.push_back(g.quantile(u));
        require_finite(curve.f_inv.back(), "F^{-1}");
        require_finite(curve.g_inv.back(), "G^{-1}");
    }
    return curve;
}

OrderVerdict check_st(const ContinuousDist& f, const ContinuousDist& g, const GridSpec& grid,
                      double tolerance) {
    const QuantileCurve curve = quantile_curve(f, g, grid);
    std::vector<double> xs = curve.f_inv;
    xs.insert(xs.end(), curve.g_inv.begin(), curve.g_inv.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    ViolationTracker tracker;
    for (double x : xs) {
        tracker.observe(g.cdf(x) - f.cdf(x), {{"x", x}});
    }
    return tracker.verdict("st", "pooled quantiles of " + grid.describe(), tolerance);
}

OrderVerdict check_disp(const ContinuousDist& f, const ContinuousDist& g, const GridSpec& grid,
                        double tolerance) {
    const QuantileCurve curve = quantile_curve(f, g, grid);
    ViolationTracker tracker;
    for (std::size_t k = 0; k + 1 < curve.u.size(); ++k) {
        const double here = curve.g_inv[k] - curve.f_inv[k];
        const double next = curve.g_inv[k + 1] - curve.f_inv[k + 1];
        tracker.observe(here - next, {{"u", curve.u[k]}, {"u_next", curve.u[k + 1]}});
    }
    return tracker.verdict("disp", grid.describe(), tolerance);
}

OrderVerdict check_star(const ContinuousDist& f, const ContinuousDist& g, const GridSpec& grid,
                        double tolerance) {
    if (f.support_lower() < 0.0 || g.support_lower() < 0.0) {
        throw InvalidInput("check_star: both supports must be nonnegative");
    }
    const QuantileCurve curve = quantile_curve(f, g, grid);
    std::vector<double> ratio(curve.u.size());
    for (std::size_t k = 0; k < curve.u.size(); ++k) {
        if (!(curve.f_inv[k] > 0.0)) {
            throw DegenerateInput("check_star: F^{-1}(" + std::to_string(curve.u[k]) + ") = 0");
        }
        ratio[k] = curve.g_inv[k] / curve.f_inv[k];
    }
    ViolationTracker tracker;
    for (std::size_t k = 0; k + 1 < ratio.size(); ++k) {
        tracker.observe(ratio[k] - ratio[k + 1], {{"u", curve.u[k]}, {"u_next", curve.u[k + 1]}});
    }
    return tracker.verdict("star", grid.describe(), tolerance);
}

// --- More-SI ----------------------------------------------------------------

namespace {

// H^{-1}_{xi(p)}(u) for every (p, u), computed once and reused across q.
std::vector<std::vector<double>> conditional_quantiles(const ConditionalFamily& family,
                                                       const std::vector<double>& xi,
                                                       const std::vector<double>& us) {
    std::vector<std::vector<double>> table(xi.size(), std::vector<double>(us.size()));
    for (std::size_t a = 0; a < xi.size(); ++a) {
        for (std::size_t k = 0; k < us.size(); ++k) {
            double y = 0.0;
            try {
                y = family.quantile(xi[a], us[k]);
            } catch (const DegenerateInput& e) {
                throw DegenerateInput(std::string("conditional cdf not invertible: ") + e.what());
            }
            require_finite(y, "conditional quantile");
            table[a][k] = y;
        }
    }
    return table;
}

std::vector<double> marginal_quantiles(const ContinuousDist& marginal, const std::vector<double>& ps) {
    std::vector<double> xi;
    xi.reserve(ps.size());
    for (double p : ps) {
        xi.push_back(marginal.quantile(p));
        require_finite(xi.back(), "marginal quantile");
    }
    return xi;
}

template <typename Visit>
void visit_si_grid(const ConditionalFamily& family1, const ContinuousDist& marginal1,
                   const ConditionalFamily& family2, const ContinuousDist& marginal2,
                   const GridSpec& grid, Visit&& visit) {
    grid.validate();
    const std::vector<double> us = grid.u();
    const std::vector<double> ps = grid.pq();
    const std::vector<double> xi1 = marginal_quantiles(marginal1, ps);
    const std::vector<double> xi2 = marginal_quantiles(marginal2, ps);
    const auto inv1 = conditional_quantiles(family1, xi1, us);
    const auto inv2 = conditional_quantiles(family2, xi2, us);

    for (std::size_t a = 0; a < ps.size(); ++a) {
        for (std::size_t b = a + 1; b < ps.size(); ++b) {
            for (std::size_t k = 0; k < us.size(); ++k) {
                const double lhs = family2.cdf(xi2[b], inv2[a][k]);
                const double rhs = family1.cdf(xi1[b], inv1[a][k]);
                visit(SiCurveRow{ps[a], ps[b], us[k], lhs, rhs});
            }
        }
    }
}

}  // namespace

std::vector<SiCurveRow> more_si_curve(const ConditionalFamily& family1, const ContinuousDist& marginal1,
                                      const ConditionalFamily& family2, const ContinuousDist& marginal2,
                                      const GridSpec& grid) {
    std::vector<SiCurveRow> rows;
    visit_si_grid(family1, marginal1, family2, marginal2, grid,
                  [&](const SiCurveRow& row) { rows.push_back(row); });
    return rows;
}

OrderVerdict check_more_si(const ConditionalFamily& family1, const ContinuousDist& marginal1,
                           const ConditionalFamily& family2, const ContinuousDist& marginal2,
                           const GridSpec& grid, double tolerance) {
    ViolationTracker tracker;
    visit_si_grid(family1, marginal1, family2, marginal2, grid, [&](const SiCurveRow& row) {
        tracker.observe(row.lhs - row.rhs, {{"p", row.p}, {"q", row.q}, {"u", row.u}});
    });
    return tracker.verdict("si", grid.describe(), tolerance);
}

// --- PQD --------------------------------------------------------------------

OrderVerdict check_pqd(const CopulaGrid& c1, const CopulaGrid& c2) {
    if (c1.resolution() != c2.resolution()) {
        throw InvalidInput("check_pqd: copula lattices differ (" + std::to_string(c1.resolution()) +
                           " vs " + std::to_string(c2.resolution()) + ")");
    }
    ViolationTracker tracker;
    const int r = c1.resolution();
    for (int a = 1; a <= r; ++a) {
        for (int b = 1; b <= r; ++b) {
            tracker.observe(c1.at(a, b) - c2.at(a, b),
                            {{"u", c1.coordinate(a)}, {"v", c1.coordinate(b)}});
        }
    }
    const std::string lattice = std::to_string(r) + "x" + std::to_string(r) + " copula lattice";
    return tracker.verdict("pqd", lattice, c1.confidence_radius() + c2.confidence_radius());
}

}  // namespace orderstats
