#include "orderstats/copula.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orderstats/concordance.hpp"
#include "orderstats/errors.hpp"

namespace orderstats {

CopulaGrid::CopulaGrid(int resolution, std::vector<double> values, std::size_t sample_size,
                       double confidence_radius)
    : resolution_(resolution), values_(std::move(values)), sample_size_(sample_size),
      radius_(confidence_radius) {
    if (resolution_ < 1) {
        throw InvalidInput("CopulaGrid: resolution must be positive");
    }
    const auto r = static_cast<std::size_t>(resolution_);
    if (values_.size() != r * r) {
        throw InvalidInput("CopulaGrid: expected " + std::to_string(r * r) + " values");
    }
    if (!(radius_ >= 0.0)) {
        throw InvalidInput("CopulaGrid: confidence radius must be nonnegative");
    }
}

CopulaGrid CopulaGrid::from_function(int resolution, const std::function<double(double, double)>& c) {
    if (resolution < 1) {
        throw InvalidInput("CopulaGrid: resolution must be positive");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(resolution * resolution));
    for (int a = 1; a <= resolution; ++a) {
        for (int b = 1; b <= resolution; ++b) {
            values.push_back(c(static_cast<double>(a) / resolution, static_cast<double>(b) / resolution));
        }
    }
    return CopulaGrid(resolution, std::move(values), 0, 0.0);
}

double CopulaGrid::coordinate(int a) const { return static_cast<double>(a) / resolution_; }

double CopulaGrid::at(int a, int b) const {
    if (a < 1 || b < 1 || a > resolution_ || b > resolution_) {
        throw InvalidInput("CopulaGrid::at: lattice index out of range");
    }
    return values_[static_cast<std::size_t>((a - 1) * resolution_ + (b - 1))];
}

double CopulaGrid::frechet_excess() const {
    double worst = 0.0;
    for (int a = 1; a <= resolution_; ++a) {
        for (int b = 1; b <= resolution_; ++b) {
            const double u = coordinate(a);
            const double v = coordinate(b);
            const double c = at(a, b);
            worst = std::max({worst, c - std::min(u, v), std::max(u + v - 1.0, 0.0) - c});
        }
    }
    return worst;
}

double CopulaGrid::margin_excess() const {
    double worst = 0.0;
    for (int a = 1; a <= resolution_; ++a) {
        worst = std::max({worst, std::abs(at(a, resolution_) - coordinate(a)),
                          std::abs(at(resolution_, a) - coordinate(a))});
    }
    return worst;
}

double copula_confidence_radius(std::size_t sample_size, double significance) {
    if (sample_size == 0) {
        throw InvalidInput("copula_confidence_radius: sample size must be positive");
    }
    return std::sqrt(std::log(2.0 / significance) / (2.0 * static_cast<double>(sample_size)));
}

CopulaGrid empirical_copula(std::span<const std::pair<double, double>> pairs, int resolution) {
    constexpr std::size_t kMinSamples = 100;
    if (pairs.size() < kMinSamples) {
        throw InvalidInput("empirical_copula: need at least 100 pairs, got " +
                           std::to_string(pairs.size()));
    }
    if (resolution < 1) {
        throw InvalidInput("empirical_copula: resolution must be positive");
    }
    std::vector<double> xs(pairs.size());
    std::vector<double> ys(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        xs[k] = pairs[k].first;
        ys[k] = pairs[k].second;
    }
    const auto rx = strict_ranks(xs);
    const auto ry = strict_ranks(ys);

    const std::size_t m = pairs.size();
    const auto r = static_cast<std::size_t>(resolution);
    // Point k enters C(a/r, b/r) iff R_k r <= a m, i.e. a >= ceil(R_k r / m).
    std::vector<std::size_t> counts((r + 1) * (r + 1), 0);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t a = (rx[k] * r + m - 1) / m;
        const std::size_t b = (ry[k] * r + m - 1) / m;
        ++counts[a * (r + 1) + b];
    }
    for (std::size_t a = 1; a <= r; ++a) {
        for (std::size_t b = 1; b <= r; ++b) {
            counts[a * (r + 1) + b] += counts[(a - 1) * (r + 1) + b] + counts[a * (r + 1) + b - 1] -
                                       counts[(a - 1) * (r + 1) + b - 1];
        }
    }
    std::vector<double> values;
    values.reserve(r * r);
    for (std::size_t a = 1; a <= r; ++a) {
        for (std::size_t b = 1; b <= r; ++b) {
            values.push_back(static_cast<double>(counts[a * (r + 1) + b]) / static_cast<double>(m));
        }
    }
    return CopulaGrid(resolution, std::move(values), m, copula_confidence_radius(m));
}

double copula_sup_distance(const CopulaGrid& c1, const CopulaGrid& c2) {
    if (c1.resolution() != c2.resolution()) {
        throw InvalidInput("copula_sup_distance: copula lattices differ");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < c1.values().size(); ++k) {
        worst = std::max(worst, std::abs(c1.values()[k] - c2.values()[k]));
    }
    return worst;
}

}  // namespace orderstats
