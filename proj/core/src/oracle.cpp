#include "orderstats/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "orderstats/distribution.hpp"
#include "orderstats/errors.hpp"

namespace orderstats::oracle {

PermutationSpacingOracle::PermutationSpacingOracle(const RateVector& rv, std::size_t i,
                                                   std::size_t j) {
    const std::size_t n = rv.size();
    if (n > kMaxOracleSize) {
        throw ExactLawTooLarge("permutation oracle: n! enumeration limited to n <= " +
                               std::to_string(kMaxOracleSize));
    }
    if (!(i >= 1 && i < j && j <= n)) {
        throw InvalidInput("permutation oracle: need 1 <= i < j <= n");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
        // order[k] is the (k+1)-th item to fail.
        double remaining = 0.0;
        for (double r : rv.rates()) {
            remaining += r;
        }
        double weight = 1.0;
        std::vector<double> stages;
        for (std::size_t k = 0; k < n; ++k) {
            weight *= rv[order[k]] / remaining;
            remaining = 0.0;
            for (std::size_t l = k + 1; l < n; ++l) {
                remaining += rv[order[l]];
            }
            if (k + 1 >= i && k + 1 < j) {
                stages.push_back(remaining);
            }
        }
        terms_.push_back({weight, Hypoexponential(std::move(stages))});
        ++orders_;
    } while (std::next_permutation(order.begin(), order.end()));
}

double PermutationSpacingOracle::cdf(double t) const {
    if (t <= 0.0) {
        return 0.0;
    }
    double acc = 0.0;
    for (const auto& term : terms_) {
        acc += term.weight * term.law.cdf_uniformized(t);
    }
    return acc;
}

double PermutationSpacingOracle::total_weight() const {
    double acc = 0.0;
    for (const auto& term : terms_) {
        acc += term.weight;
    }
    return acc;
}

}  // namespace orderstats::oracle
