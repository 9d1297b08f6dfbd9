#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "orderstats/random.hpp"
#include "orderstats/rate_vector.hpp"

namespace orderstats::test_support {

/// Random rate vector of size n with rates log-uniform on [0.2, 5].
inline RateVector random_rates(SampleStream& stream, std::size_t n) {
    std::vector<double> rates(n);
    for (auto& r : rates) {
        r = 0.2 * std::exp(std::log(25.0) * stream.uniform_open());
    }
    return RateVector(std::move(rates));
}

/// Uniform integer in [lo, hi].
inline std::size_t random_between(SampleStream& stream, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(stream.uniform_index(hi - lo + 1));
}

/// Uniform real in (lo, hi).
inline double random_real(SampleStream& stream, double lo, double hi) {
    return lo + (hi - lo) * stream.uniform_open();
}

}  // namespace orderstats::test_support
