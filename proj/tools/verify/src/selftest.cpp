#include "orderstats_verify/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "orderstats/errors.hpp"
#include "orderstats/numerics.hpp"
#include "orderstats/oracle.hpp"
#include "orderstats/order_statistics.hpp"
#include "orderstats/random.hpp"

namespace orderstats::verify {

namespace {

RateVector random_rates(SampleStream& stream, std::size_t n) {
    std::vector<double> rates(n);
    for (auto& r : rates) {
        r = 0.2 * std::exp(std::log(25.0) * stream.uniform_open());
    }
    return RateVector(std::move(rates));
}

}  // namespace

SelftestResult run_selftest(const SelftestOptions& options) {
    if (options.max_n < 2 || options.max_n > oracle::kMaxOracleSize) {
        throw InvalidInput("selftest: max-n must lie in 2.." + std::to_string(oracle::kMaxOracleSize));
    }
    SelftestResult result;
    SampleStream stream(options.seed, 0);
    const std::vector<double> us = numerics::probability_grid(options.points);

    for (std::size_t instance = 0; instance < options.instances; ++instance) {
        const std::size_t n = 2 + static_cast<std::size_t>(stream.uniform_index(options.max_n - 1));
        const RateVector rv = random_rates(stream, n);
        double oracle_diff = 0.0;
        double conv_diff = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            for (std::size_t j = i + 1; j <= n; ++j) {
                const SpacingMixture law = spacing_law(rv, i, j);
                const oracle::PermutationSpacingOracle brute(rv, i, j);
                for (double u : us) {
                    const double t = law.quantile(u);
                    oracle_diff = std::max(oracle_diff, std::abs(law.cdf(t) - brute.cdf(t)));
                    ++result.oracle_comparisons;
                }
            }
        }
        const auto minimum = min_law(rv);
        for (std::size_t i = 2; i <= n; ++i) {
            const SpacingMixture spacing = spacing_law(rv, 1, i);
            for (double u : {0.1, 0.5, 0.9}) {
                const double t = minimum->quantile(u) + spacing.quantile(u);
                conv_diff =
                    std::max(conv_diff, std::abs(order_stat_cdf(rv, i, t) - order_stat_cdf_by_convolution(rv, i, t)));
                ++result.convolution_comparisons;
            }
        }
        result.max_oracle_difference = std::max(result.max_oracle_difference, oracle_diff);
        result.max_convolution_difference = std::max(result.max_convolution_difference, conv_diff);

        std::string rates;
        for (std::size_t k = 0; k < n; ++k) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%s%.4g", k == 0 ? "" : ",", rv[k]);
            rates += buf;
        }
        char line[256];
        std::snprintf(line, sizeof line, "instance %3zu n=%zu rates=(%s) oracle=%.3e convolution=%.3e", instance + 1, n,
                      rates.c_str(), oracle_diff, conv_diff);
        result.lines.emplace_back(line);
        ++result.instances;
    }
    result.passed = result.max_oracle_difference <= options.oracle_tolerance &&
                    result.max_convolution_difference <= options.convolution_tolerance;
    return result;
}

}  // namespace orderstats::verify
