#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "orderstats/distribution.hpp"
#include "orderstats/errors.hpp"

namespace orderstats {

namespace {

// Partial fractions are used only when every pairwise gap exceeds this
// fraction of the largest rate...
constexpr double kMinRelativeGap = 1e-6;
// ...and the coefficients are small enough that sum_m |c_m| * eps stays
// near 1e-13.
constexpr double kMaxCoefficientMass = 1e3;

// Poisson mass further than this many standard deviations below the mean is
// below 1e-30 and is skipped.
constexpr double kPoissonLowerSigmas = 12.0;
constexpr double kUniformizationTailTolerance = 1e-16;

}  // namespace

Hypoexponential::Hypoexponential(std::vector<double> stage_rates) : rates_(std::move(stage_rates)) {
    if (rates_.empty()) {
        throw InvalidParameter("hypoexponential: at least one stage rate required");
    }
    for (double r : rates_) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw InvalidParameter("hypoexponential: stage rates must be positive and finite, got " +
                                   std::to_string(r));
        }
    }
    std::sort(rates_.begin(), rates_.end(), std::greater<>());

    const double max_rate = rates_.front();
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m < rates_.size(); ++m) {
        min_gap = std::min(min_gap, rates_[m - 1] - rates_[m]);
    }
    if (min_gap > kMinRelativeGap * max_rate) {
        std::vector<double> coeffs(rates_.size(), 1.0);
        double mass = 0.0;
        for (std::size_t m = 0; m < rates_.size(); ++m) {
            for (std::size_t l = 0; l < rates_.size(); ++l) {
                if (l != m) {
                    coeffs[m] *= rates_[l] / (rates_[l] - rates_[m]);
                }
            }
            mass += std::abs(coeffs[m]);
        }
        if (mass <= kMaxCoefficientMass) {
            coefficients_ = std::move(coeffs);
            closed_form_ = true;
        }
    }
}

double Hypoexponential::mean() const {
    double acc = 0.0;
    for (double r : rates_) {
        acc += 1.0 / r;
    }
    return acc;
}

double Hypoexponential::variance() const {
    double acc = 0.0;
    for (double r : rates_) {
        acc += 1.0 / (r * r);
    }
    return acc;
}

double Hypoexponential::draw(SampleStream& stream) const {
    double total = 0.0;
    for (double r : rates_) {
        total += stream.standard_exponential() / r;
    }
    return total;
}

double Hypoexponential::cdf(double x) const {
    if (!std::isfinite(x)) {
        if (std::isnan(x)) {
            throw DomainError("hypoexponential cdf: t must be finite");
        }
        return x > 0.0 ? 1.0 : 0.0;
    }
    return closed_form_ ? cdf_partial_fractions(x) : cdf_uniformized(x);
}

double Hypoexponential::survival(double x) const {
    if (x <= 0.0) {
        return 1.0;
    }
    return closed_form_ ? survival_partial_fractions(x) : survival_uniformized(x);
}

double Hypoexponential::survival_partial_fractions(double x) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < rates_.size(); ++m) {
        acc += coefficients_[m] * std::exp(-rates_[m] * x);
    }
    return std::clamp(acc, 0.0, 1.0);
}

double Hypoexponential::cdf_partial_fractions(double x) const {
    if (coefficients_.empty()) {
        throw DegenerateInput("hypoexponential: partial fractions unavailable for these rates");
    }
    if (x <= 0.0) {
        return 0.0;
    }
    const double surv = survival_partial_fractions(x);
    if (surv < 0.5) {
        return 1.0 - surv;
    }
    // Near the origin, sum_m c_m = 1 lets the cdf be written without the
    // cancellation in 1 - survival.
    double acc = 0.0;
    for (std::size_t m = 0; m < rates_.size(); ++m) {
        acc -= coefficients_[m] * std::expm1(-rates_[m] * x);
    }
    return std::clamp(acc, 0.0, 1.0);
}

double Hypoexponential::cdf_uniformized(double x) const {
    if (x <= 0.0) {
        return 0.0;
    }
    return std::clamp(1.0 - survival_uniformized(x), 0.0, 1.0);
}

// The embedded chain of the uniformized generator moves from stage m to m+1
// with probability r_m / q per tick, q = max rate. With N ~ Poisson(q t)
// ticks, survival(t) = sum_N P(N) * (mass still in a transient stage).
double Hypoexponential::survival_uniformized(double x) const {
    if (x <= 0.0) {
        return 1.0;
    }
    const std::size_t k = rates_.size();
    const double q = rates_.front();
    const double qt = q * x;

    std::vector<double> advance(k);
    for (std::size_t m = 0; m < k; ++m) {
        advance[m] = rates_[m] / q;
    }

    std::vector<double> state(k, 0.0);
    state[0] = 1.0;
    auto transient_mass = [&] { return std::accumulate(state.begin(), state.end(), 0.0); };
    auto tick = [&] {
        for (std::size_t m = k; m-- > 0;) {
            const double moved = state[m] * advance[m];
            state[m] -= moved;
            if (m + 1 < k) {
                state[m + 1] += moved;
            }
        }
    };

    const double start_f = std::max(0.0, std::floor(qt - kPoissonLowerSigmas * std::sqrt(qt) - 10.0));
    const auto start = static_cast<std::size_t>(start_f);
    for (std::size_t n = 0; n < start; ++n) {
        tick();
    }
    if (start > 0 && transient_mass() < 1e-300) {
        return 0.0;
    }

    double pmf = start == 0 ? std::exp(-qt)
                            : std::exp(-qt + start_f * std::log(qt) - std::lgamma(start_f + 1.0));
    double acc = 0.0;
    for (std::size_t n = start;; ++n) {
        const double mass = transient_mass();
        acc += pmf * mass;
        const auto next = static_cast<double>(n + 1);
        if (mass < 1e-300) {
            break;
        }
        if (next > qt + 1.0) {
            // Poisson right tail beyond n is at most pmf * (n+2)/(n+2-qt).
            const double tail = pmf * qt / next * (next + 1.0) / (next + 1.0 - qt);
            if (tail * mass < kUniformizationTailTolerance * std::max(acc, 1e-300) ||
                tail * mass < 1e-300) {
                break;
            }
        }
        pmf *= qt / next;
        tick();
    }
    return std::clamp(acc, 0.0, 1.0);
}

double hypoexp_cdf(std::span<const double> stage_rates, double t) {
    if (!std::isfinite(t)) {
        throw DomainError("hypoexp_cdf: t must be finite");
    }
    return Hypoexponential(std::vector<double>(stage_rates.begin(), stage_rates.end())).cdf(t);
}

}  // namespace orderstats
