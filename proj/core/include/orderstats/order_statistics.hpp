#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "orderstats/distribution.hpp"
#include "orderstats/random.hpp"
#include "orderstats/rate_vector.hpp"

namespace orderstats {

/// Exact constructions enumerate subsets of {1..n} as bitmasks.
inline constexpr std::size_t kMaxExactSampleSize = 16;
/// Upper bound on the number of surviving-set chains enumerated for one
/// spacing law.
inline constexpr std::size_t kMaxSpacingChains = 250'000;

/// One surviving-set chain T_i > T_{i+1} > ... > T_{j-1}: its probability and
/// the total rates Lambda(T_i), ..., Lambda(T_{j-1}) of the exponential
/// holding times spent in each set.
struct SpacingChain {
    double weight;
    std::vector<double> stages;
};

/// Exact law of X_{j:n} - X_{i:n}: a mixture of hypoexponentials indexed by
/// surviving-set chains. Chains with identical stage sequences are merged.
class SpacingMixture {
public:
    SpacingMixture(std::size_t i, std::size_t j, std::vector<SpacingChain> chains);

    [[nodiscard]] std::size_t i() const noexcept { return i_; }
    [[nodiscard]] std::size_t j() const noexcept { return j_; }
    [[nodiscard]] std::span<const SpacingChain> chains() const noexcept { return chains_; }

    [[nodiscard]] const DistPtr& law() const noexcept { return law_; }
    [[nodiscard]] double cdf(double t) const { return law_->cdf(t); }
    [[nodiscard]] double quantile(double u) const { return law_->quantile(u); }

    [[nodiscard]] double mean() const;
    [[nodiscard]] double variance() const;

private:
    std::size_t i_;
    std::size_t j_;
    std::vector<SpacingChain> chains_;
    DistPtr law_;
};

/// Conditional laws H_x of a response given a conditioning value x.
class ConditionalFamily {
public:
    virtual ~ConditionalFamily() = default;
    [[nodiscard]] virtual double cdf(double x, double t) const = 0;
    [[nodiscard]] virtual double quantile(double x, double u) const = 0;
    [[nodiscard]] virtual DistPtr at(double x) const = 0;
};

/// H_x(t) = B(t - x): the response is x plus an independent variable with
/// law B. This is the conditional structure of X_{i:n} given X_{1:n} = x.
class ShiftFamily final : public ConditionalFamily {
public:
    explicit ShiftFamily(DistPtr base);

    [[nodiscard]] const DistPtr& base() const noexcept { return base_; }

    [[nodiscard]] double cdf(double x, double t) const override { return base_->cdf(t - x); }
    [[nodiscard]] double quantile(double x, double u) const override { return x + base_->quantile(u); }
    [[nodiscard]] DistPtr at(double x) const override;

private:
    DistPtr base_;
};

/// H_x = L for every x (response independent of the conditioning variable).
class IndependentFamily final : public ConditionalFamily {
public:
    explicit IndependentFamily(DistPtr law);

    [[nodiscard]] double cdf(double, double t) const override { return law_->cdf(t); }
    [[nodiscard]] double quantile(double, double u) const override { return law_->quantile(u); }
    [[nodiscard]] DistPtr at(double) const override { return law_; }

private:
    DistPtr law_;
};

/// Law of X_{1:n}: exponential with the total rate.
[[nodiscard]] DistPtr min_law(const RateVector& rv);

/// P(X_{i:n} <= t), 1-based i, via the Poisson-binomial count of
/// {X_m <= t} in O(n^2).
[[nodiscard]] double order_stat_cdf(const RateVector& rv, std::size_t i, double t);

/// Exact law of X_{j:n} - X_{i:n}, 1 <= i < j <= n.
[[nodiscard]] SpacingMixture spacing_law(const RateVector& rv, std::size_t i, std::size_t j);

/// First two moments of X_{j:n} - X_{i:n} by a forward subset recursion;
/// does not enumerate chains, so it scales to n = kMaxExactSampleSize.
struct SpacingMoments {
    double mean;
    double variance;
};
[[nodiscard]] SpacingMoments spacing_moments(const RateVector& rv, std::size_t i, std::size_t j);

/// Conditional family of X_{i:n} given X_{1:n}, 2 <= i <= n: the shift
/// family of spacing_law(rv, 1, i).
[[nodiscard]] ShiftFamily conditional_family(const RateVector& rv, std::size_t i);

/// Pearson correlation of (X_{1:n}, X_{i:n}), 2 <= i <= n. The spacing is
/// independent of the minimum, so Cov = Var(X_{1:n}) and the correlation is
/// sd(X_{1:n}) / sd(X_{i:n}).
[[nodiscard]] double exact_min_corr(const RateVector& rv, std::size_t i);

/// P(X_{i:n} <= t) as the convolution of min_law with spacing_law(1, i),
/// integrated by adaptive Simpson. Used to cross-check order_stat_cdf.
[[nodiscard]] double order_stat_cdf_by_convolution(const RateVector& rv, std::size_t i, double t,
                                                   double tol = 1e-9);

/// One realisation of (X_{1:n}, ..., X_{n:n}).
[[nodiscard]] std::vector<double> draw_order_statistics(const RateVector& rv, SampleStream& stream);

/// m draws of the pair (X_{a:n}, X_{b:n}), 1-based indices.
[[nodiscard]] std::vector<std::pair<double, double>> sample_order_pair(const RateVector& rv,
                                                                       std::size_t a, std::size_t b,
                                                                       SampleStream& stream,
                                                                       std::size_t m);

/// m draws of X_{j:n} - X_{i:n}.
[[nodiscard]] std::vector<double> sample_spacing(const RateVector& rv, std::size_t i, std::size_t j,
                                                 SampleStream& stream, std::size_t m);

}  // namespace orderstats
