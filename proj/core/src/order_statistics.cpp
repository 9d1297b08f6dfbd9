#include "orderstats/order_statistics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

#include "orderstats/errors.hpp"
#include "orderstats/numerics.hpp"

namespace orderstats {

namespace {

using Mask = std::uint32_t;

void require_pair(const RateVector& rv, std::size_t i, std::size_t j, const char* who) {
    if (!(i >= 1 && i < j && j <= rv.size())) {
        throw InvalidInput(std::string(who) + ": need 1 <= i < j <= n, got i=" + std::to_string(i) +
                           ", j=" + std::to_string(j) + ", n=" + std::to_string(rv.size()));
    }
}

void require_exact_size(const RateVector& rv, const char* who) {
    if (rv.size() > kMaxExactSampleSize) {
        throw ExactLawTooLarge(std::string(who) + ": exact construction supports n <= " +
                               std::to_string(kMaxExactSampleSize));
    }
}

// Rates sorted ascending, so equal multisets of rates are summed in the same
// order and tied surviving sets get bit-identical totals.
struct SubsetTables {
    std::vector<double> rates;
    std::vector<double> total;  // Lambda(mask)
    Mask full = 0;
};

SubsetTables make_tables(const RateVector& rv) {
    SubsetTables t;
    t.rates.assign(rv.rates().begin(), rv.rates().end());
    std::sort(t.rates.begin(), t.rates.end());
    const std::size_t n = t.rates.size();
    t.full = static_cast<Mask>((Mask{1} << n) - 1);
    t.total.assign(std::size_t{1} << n, 0.0);
    for (Mask mask = 1; mask <= t.full; ++mask) {
        const int low = std::countr_zero(mask);
        t.total[mask] = t.total[mask & (mask - 1)] + t.rates[static_cast<std::size_t>(low)];
    }
    return t;
}

// P(surviving set after n - |T| failures equals T), for every T with
// |T| >= min_size. Failures leave the set T at rate Lambda(T); item x is the
// one that fails with probability lambda_x / Lambda(T).
std::vector<double> surviving_set_probabilities(const SubsetTables& t, std::size_t min_size) {
    std::vector<double> prob(t.total.size(), 0.0);
    prob[t.full] = 1.0;
    const std::size_t n = t.rates.size();
    std::vector<std::vector<Mask>> by_size(n + 1);
    for (Mask mask = 0; mask <= t.full; ++mask) {
        by_size[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    }
    for (std::size_t size = n; size > min_size; --size) {
        for (Mask mask : by_size[size]) {
            const double p = prob[mask];
            if (p == 0.0) {
                continue;
            }
            for (Mask rest = mask; rest != 0; rest &= rest - 1) {
                const Mask bit = rest & (~rest + 1);
                const auto x = static_cast<std::size_t>(std::countr_zero(bit));
                prob[mask ^ bit] += p * t.rates[x] / t.total[mask];
            }
        }
    }
    return prob;
}

double falling_chain_count(std::size_t n, std::size_t i, std::size_t j) {
    // C(n, n-i) choices of T_i, then (n-i)(n-i-1)...(n-j+2) removals.
    double count = 1.0;
    for (std::size_t k = 0; k < i; ++k) {
        count = count * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    for (std::size_t size = n - i; size > n - j + 1; --size) {
        count *= static_cast<double>(size);
    }
    return count;
}

}  // namespace

SpacingMixture::SpacingMixture(std::size_t i, std::size_t j, std::vector<SpacingChain> chains)
    : i_(i), j_(j), chains_(std::move(chains)) {
    if (chains_.empty()) {
        throw InvalidParameter("SpacingMixture: no chains");
    }
    std::vector<FiniteMixture::Component> components;
    components.reserve(chains_.size());
    for (const auto& chain : chains_) {
        components.push_back({chain.weight, std::make_shared<const Hypoexponential>(chain.stages)});
    }
    law_ = std::make_shared<const FiniteMixture>(std::move(components));
}

double SpacingMixture::mean() const {
    double acc = 0.0;
    for (const auto& chain : chains_) {
        double m = 0.0;
        for (double r : chain.stages) {
            m += 1.0 / r;
        }
        acc += chain.weight * m;
    }
    return acc;
}

double SpacingMixture::variance() const {
    double first = 0.0;
    double second = 0.0;
    for (const auto& chain : chains_) {
        double m = 0.0;
        double v = 0.0;
        for (double r : chain.stages) {
            m += 1.0 / r;
            v += 1.0 / (r * r);
        }
        first += chain.weight * m;
        second += chain.weight * (v + m * m);
    }
    return second - first * first;
}

ShiftFamily::ShiftFamily(DistPtr base) : base_(std::move(base)) {
    if (!base_) {
        throw InvalidParameter("ShiftFamily: null base law");
    }
}

DistPtr ShiftFamily::at(double x) const { return std::make_shared<const Shifted>(base_, x); }

IndependentFamily::IndependentFamily(DistPtr law) : law_(std::move(law)) {
    if (!law_) {
        throw InvalidParameter("IndependentFamily: null law");
    }
}

DistPtr min_law(const RateVector& rv) { return std::make_shared<const Exponential>(rv.total_rate()); }

double order_stat_cdf(const RateVector& rv, std::size_t i, double t) {
    const std::size_t n = rv.size();
    if (i < 1 || i > n) {
        throw InvalidInput("order_stat_cdf: index " + std::to_string(i) + " outside 1.." +
                           std::to_string(n));
    }
    if (std::isnan(t)) {
        throw DomainError("order_stat_cdf: t must be finite");
    }
    if (t <= 0.0) {
        return 0.0;
    }
    // count[c] = P(exactly c of the first k lifetimes are <= t).
    std::vector<double> count(n + 1, 0.0);
    count[0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double p = -std::expm1(-rv[k] * t);
        const double q = std::exp(-rv[k] * t);
        for (std::size_t c = k + 1; c > 0; --c) {
            count[c] = count[c] * q + count[c - 1] * p;
        }
        count[0] *= q;
    }
    const double below = std::accumulate(count.begin(), count.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
    const double at_least = std::accumulate(count.begin() + static_cast<std::ptrdiff_t>(i), count.end(), 0.0);
    return std::clamp(at_least < 0.5 ? at_least : 1.0 - below, 0.0, 1.0);
}

SpacingMixture spacing_law(const RateVector& rv, std::size_t i, std::size_t j) {
    require_pair(rv, i, j, "spacing_law");
    require_exact_size(rv, "spacing_law");
    const std::size_t n = rv.size();
    if (falling_chain_count(n, i, j) > static_cast<double>(kMaxSpacingChains)) {
        throw ExactLawTooLarge("spacing_law: more than " + std::to_string(kMaxSpacingChains) +
                               " surviving-set chains for n=" + std::to_string(n) +
                               ", i=" + std::to_string(i) + ", j=" + std::to_string(j));
    }

    const SubsetTables tables = make_tables(rv);
    const std::vector<double> prob = surviving_set_probabilities(tables, n - i);
    const std::size_t depth = j - i;

    // Keyed by stage sequence: tied chains merge, iteration order is
    // lexicographic and therefore reproducible.
    std::map<std::vector<double>, double> merged;
    std::vector<double> stages;
    stages.reserve(depth);

    auto extend = [&](auto&& self, Mask set, double weight) -> void {
        stages.push_back(tables.total[set]);
        if (stages.size() == depth) {
            merged[stages] += weight;
        } else {
            for (Mask rest = set; rest != 0; rest &= rest - 1) {
                const Mask bit = rest & (~rest + 1);
                const auto x = static_cast<std::size_t>(std::countr_zero(bit));
                self(self, set ^ bit, weight * tables.rates[x] / tables.total[set]);
            }
        }
        stages.pop_back();
    };

    for (Mask mask = 0; mask <= tables.full; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) == n - i && prob[mask] > 0.0) {
            extend(extend, mask, prob[mask]);
        }
    }

    // The weights sum to one exactly; renormalise away the rounding drift so
    // a single merged chain carries weight 1 rather than 1 + eps.
    double total = 0.0;
    for (const auto& entry : merged) {
        total += entry.second;
    }
    std::vector<SpacingChain> chains;
    chains.reserve(merged.size());
    for (auto& [key, weight] : merged) {
        chains.push_back({std::min(1.0, weight / total), key});
    }
    return SpacingMixture(i, j, std::move(chains));
}

SpacingMoments spacing_moments(const RateVector& rv, std::size_t i, std::size_t j) {
    require_pair(rv, i, j, "spacing_moments");
    require_exact_size(rv, "spacing_moments");
    const std::size_t n = rv.size();
    const SubsetTables tables = make_tables(rv);
    std::vector<double> prob = surviving_set_probabilities(tables, n - i);

    // first[T] = E[S_partial ; set = T], second[T] = E[S_partial^2 ; set = T],
    // where S_partial is the time accumulated since the i-th failure.
    std::vector<double> first(prob.size(), 0.0);
    std::vector<double> second(prob.size(), 0.0);
    for (Mask mask = 0; mask <= tables.full; ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) != n - i) {
            prob[mask] = 0.0;
        }
    }
    double mean = 0.0;
    double raw_second = 0.0;
    for (std::size_t size = n - i; size + j > n; --size) {
        for (Mask mask = 0; mask <= tables.full; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != size || prob[mask] == 0.0) {
                continue;
            }
            const double rate = tables.total[mask];
            const double p = prob[mask];
            const double a = first[mask] + p / rate;
            const double b = second[mask] + 2.0 * first[mask] / rate + 2.0 * p / (rate * rate);
            if (size + j == n + 1) {
                mean += a;
                raw_second += b;
                continue;
            }
            for (Mask rest = mask; rest != 0; rest &= rest - 1) {
                const Mask bit = rest & (~rest + 1);
                const double move = tables.rates[static_cast<std::size_t>(std::countr_zero(bit))] / rate;
                prob[mask ^ bit] += p * move;
                first[mask ^ bit] += a * move;
                second[mask ^ bit] += b * move;
            }
        }
    }
    return {mean, raw_second - mean * mean};
}

ShiftFamily conditional_family(const RateVector& rv, std::size_t i) {
    if (i < 2 || i > rv.size()) {
        throw InvalidInput("conditional_family: need 2 <= i <= n, got i=" + std::to_string(i));
    }
    return ShiftFamily(spacing_law(rv, 1, i).law());
}

double exact_min_corr(const RateVector& rv, std::size_t i) {
    if (i < 2 || i > rv.size()) {
        throw InvalidInput("exact_min_corr: need 2 <= i <= n, got i=" + std::to_string(i));
    }
    const double var_min = 1.0 / (rv.total_rate() * rv.total_rate());
    const SpacingMoments spacing = spacing_moments(rv, 1, i);
    return std::sqrt(var_min / (var_min + spacing.variance));
}

double order_stat_cdf_by_convolution(const RateVector& rv, std::size_t i, double t, double tol) {
    if (i < 1 || i > rv.size()) {
        throw InvalidInput("order_stat_cdf_by_convolution: index out of range");
    }
    const auto minimum = min_law(rv);
    if (t <= 0.0) {
        return 0.0;
    }
    if (i == 1) {
        return minimum->cdf(t);
    }
    const SpacingMixture spacing = spacing_law(rv, 1, i);
    const double rate = rv.total_rate();
    // P(min + S <= t) = int_0^t P(S <= t - x) rate e^{-rate x} dx
    auto integrand = [&](double x) { return spacing.cdf(t - x) * rate * std::exp(-rate * x); };
    return numerics::adaptive_simpson(integrand, 0.0, t, tol);
}

std::vector<double> draw_order_statistics(const RateVector& rv, SampleStream& stream) {
    std::vector<double> draws(rv.size());
    for (std::size_t k = 0; k < rv.size(); ++k) {
        draws[k] = stream.standard_exponential() / rv[k];
    }
    std::sort(draws.begin(), draws.end());
    return draws;
}

std::vector<std::pair<double, double>> sample_order_pair(const RateVector& rv, std::size_t a,
                                                         std::size_t b, SampleStream& stream,
                                                         std::size_t m) {
    if (a < 1 || b < 1 || a > rv.size() || b > rv.size()) {
        throw InvalidInput("sample_order_pair: index out of range");
    }
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto sorted = draw_order_statistics(rv, stream);
        pairs.emplace_back(sorted[a - 1], sorted[b - 1]);
    }
    return pairs;
}

std::vector<double> sample_spacing(const RateVector& rv, std::size_t i, std::size_t j,
                                   SampleStream& stream, std::size_t m) {
    require_pair(rv, i, j, "sample_spacing");
    std::vector<double> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto sorted = draw_order_statistics(rv, stream);
        out.push_back(sorted[j - 1] - sorted[i - 1]);
    }
    return out;
}

}  // namespace orderstats
