#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace orderstats::verify {

struct SelftestOptions {
    std::size_t max_n = 6;
    std::uint64_t seed = 0;
    std::size_t instances = 50;
    int points = 20;  // cdf compared at quantiles k/points of the exact law
    double oracle_tolerance = 1e-12;
    double convolution_tolerance = 1e-8;
};

struct SelftestResult {
    std::size_t instances = 0;
    std::size_t oracle_comparisons = 0;
    std::size_t convolution_comparisons = 0;
    double max_oracle_difference = 0.0;
    double max_convolution_difference = 0.0;
    bool passed = false;
    std::vector<std::string> lines;  // one summary line per instance
};

/// For random rate vectors (log-uniform on [0.2, 5], n uniform in
/// 2..max_n) compares, for every pair i < j, the subset-recursion spacing
/// law against the permutation oracle, and every order-statistic cdf
/// against the convolution route.
[[nodiscard]] SelftestResult run_selftest(const SelftestOptions& options);

}  // namespace orderstats::verify
