#include "orderstats/kendall_tau.hpp"

#include <cmath>
#include <string>

#include "orderstats/errors.hpp"

namespace orderstats {

namespace {

void require_indices(std::size_t n, std::size_t i) {
    if (n < 2 || i < 2 || i > n) {
        throw InvalidInput("tau(min, i-th): need n >= 2 and 2 <= i <= n, got n=" + std::to_string(n) +
                           ", i=" + std::to_string(i));
    }
}

double log_binomial(std::size_t n, std::size_t k) {
    const auto nn = static_cast<double>(n);
    const auto kk = static_cast<double>(k);
    return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
}

}  // namespace

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    BigInt result = 1;
    for (std::size_t t = 1; t <= k; ++t) {
        result *= n - k + t;
        result /= t;
    }
    return result;
}

Rational exact_tau_min_pair_rational(std::size_t n, std::size_t i) {
    require_indices(n, i);
    Rational sum = 0;
    for (std::size_t s = 0; s <= n - i; ++s) {
        sum += Rational(binomial(n, s), binomial(2 * n - 2, n - i + s));
    }
    const Rational lead(BigInt(2 * (n - 1)) * binomial(n - 2, i - 2), BigInt(2 * n - 1));
    return Rational(1) - lead * sum;
}

double tau_min_pair_floating(std::size_t n, std::size_t i) {
    require_indices(n, i);
    const double log_lead = std::log(2.0 * static_cast<double>(n - 1)) -
                            std::log(2.0 * static_cast<double>(n) - 1.0) + log_binomial(n - 2, i - 2);
    double sum = 0.0;
    for (std::size_t s = 0; s <= n - i; ++s) {
        sum += std::exp(log_lead + log_binomial(n, s) - log_binomial(2 * n - 2, n - i + s));
    }
    return 1.0 - sum;
}

double exact_tau_min_pair(std::size_t n, std::size_t i) {
    if (n <= kRationalTauLimit) {
        return exact_tau_min_pair_rational(n, i).convert_to<double>();
    }
    return tau_min_pair_floating(n, i);
}

}  // namespace orderstats
