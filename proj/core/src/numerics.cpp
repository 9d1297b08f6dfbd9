#include "orderstats/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orderstats/errors.hpp"

namespace orderstats::numerics {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (!(b > a)) {
        return 0.0;
    }
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double ks_critical_value(std::size_t m, double alpha) {
    if (m == 0 || !(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidInput("ks_critical_value: need m >= 1 and alpha in (0,1)");
    }
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(m));
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) {
        throw InvalidInput("ks_distance: empty sample");
    }
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const auto m = static_cast<double>(sorted.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        const double f = cdf(sorted[k]);
        worst = std::max({worst, static_cast<double>(k + 1) / m - f, f - static_cast<double>(k) / m});
    }
    return worst;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        throw InvalidInput("mean: empty input");
    }
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    const double mu = mean(xs);
    double acc = 0.0;
    for (double x : xs) {
        acc += (x - mu) * (x - mu);
    }
    return acc / static_cast<double>(xs.size());
}

std::vector<double> probability_grid(int resolution) {
    if (resolution < 2) {
        throw InvalidInput("probability_grid: resolution must be at least 2");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(resolution - 1));
    for (int k = 1; k < resolution; ++k) {
        grid.push_back(static_cast<double>(k) / static_cast<double>(resolution));
    }
    return grid;
}

}  // namespace orderstats::numerics
