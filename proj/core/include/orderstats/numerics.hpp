#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace orderstats::numerics {

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

/// Two-sided asymptotic Kolmogorov-Smirnov critical value for m draws at
/// significance alpha: sqrt(-log(alpha/2)/2) / sqrt(m).
double ks_critical_value(std::size_t m, double alpha = 0.01);

/// sup_x |F_m(x) - F(x)| for the empirical cdf of `sample` against `cdf`.
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // population (divide by m)

/// Evenly spaced probabilities k/resolution for k = 1 .. resolution-1.
std::vector<double> probability_grid(int resolution);

}  // namespace orderstats::numerics
