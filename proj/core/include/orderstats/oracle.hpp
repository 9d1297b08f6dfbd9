#pragma once

#include <cstddef>
#include <vector>

#include "orderstats/distribution.hpp"
#include "orderstats/rate_vector.hpp"

namespace orderstats::oracle {

/// Brute-force law of X_{j:n} - X_{i:n} obtained by enumerating all n!
/// failure orders. Each order contributes its probability times a
/// hypoexponential cdf evaluated by uniformization, so no code is shared
/// with the subset recursion behind spacing_law.
class PermutationSpacingOracle {
public:
    PermutationSpacingOracle(const RateVector& rv, std::size_t i, std::size_t j);

    [[nodiscard]] double cdf(double t) const;
    [[nodiscard]] double total_weight() const;
    [[nodiscard]] std::size_t order_count() const noexcept { return orders_; }

private:
    struct Term {
        double weight;
        Hypoexponential law;
    };
    std::vector<Term> terms_;
    std::size_t orders_ = 0;
};

/// Largest n accepted by the permutation oracle.
inline constexpr std::size_t kMaxOracleSize = 9;

}  // namespace orderstats::oracle
