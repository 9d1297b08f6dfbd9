#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "orderstats/random.hpp"

namespace orderstats {

/// Common contract for the univariate laws used throughout the library.
///
/// Instances are immutable after construction and safe to share between
/// threads; sampling state lives in the caller's SampleStream.
class ContinuousDist {
public:
    virtual ~ContinuousDist() = default;

    [[nodiscard]] virtual std::string_view kind() const = 0;

    [[nodiscard]] virtual double cdf(double x) const = 0;
    [[nodiscard]] virtual double survival(double x) const { return 1.0 - cdf(x); }

    /// Generalized inverse of the cdf for u in (0,1). The default
    /// implementation is bracketing inversion (see invert_cdf).
    [[nodiscard]] virtual double quantile(double u) const;

    [[nodiscard]] virtual double mean() const = 0;
    [[nodiscard]] virtual double support_lower() const { return 0.0; }

    /// -log survival(x).
    [[nodiscard]] virtual double cumulative_hazard(double x) const;
    /// Smallest x with cumulative_hazard(x) >= h, for h > 0.
    [[nodiscard]] virtual double inverse_cumulative_hazard(double h) const;

    /// One draw.
    virtual double draw(SampleStream& stream) const = 0;

    /// m independent draws, in stream order.
    [[nodiscard]] std::vector<double> sample(SampleStream& stream, std::size_t m) const;
};

using DistPtr = std::shared_ptr<const ContinuousDist>;

/// Bracketing inversion: the upper bracket grows geometrically from the
/// mean until it covers u, then bisection runs to the absolute tolerance
/// max(1e-12, 1e-12 |x|) with a hard cap of 200 iterations in total. Returns
/// the upper end of the final bracket, so cdf(result) >= u always holds.
[[nodiscard]] double invert_cdf(const ContinuousDist& dist, double u);

class Exponential final : public ContinuousDist {
public:
    explicit Exponential(double rate);

    [[nodiscard]] double rate() const noexcept { return rate_; }

    [[nodiscard]] std::string_view kind() const override { return "exponential"; }
    [[nodiscard]] double cdf(double x) const override;
    [[nodiscard]] double survival(double x) const override;
    [[nodiscard]] double quantile(double u) const override;
    [[nodiscard]] double mean() const override { return 1.0 / rate_; }
    [[nodiscard]] double cumulative_hazard(double x) const override;
    [[nodiscard]] double inverse_cumulative_hazard(double h) const override;
    double draw(SampleStream& stream) const override;

private:
    double rate_;
};

/// Weibull with survival exp(-(x/scale)^shape).
class Weibull final : public ContinuousDist {
public:
    Weibull(double shape, double scale = 1.0);

    [[nodiscard]] double shape() const noexcept { return shape_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }

    [[nodiscard]] std::string_view kind() const override { return "weibull"; }
    [[nodiscard]] double cdf(double x) const override;
    [[nodiscard]] double survival(double x) const override;
    [[nodiscard]] double quantile(double u) const override;
    [[nodiscard]] double mean() const override;
    [[nodiscard]] double cumulative_hazard(double x) const override;
    [[nodiscard]] double inverse_cumulative_hazard(double h) const override;
    double draw(SampleStream& stream) const override;

private:
    double shape_;
    double scale_;
};

class Uniform final : public ContinuousDist {
public:
    Uniform(double lower, double upper);

    [[nodiscard]] std::string_view kind() const override { return "uniform"; }
    [[nodiscard]] double cdf(double x) const override;
    [[nodiscard]] double quantile(double u) const override;
    [[nodiscard]] double mean() const override { return 0.5 * (lower_ + upper_); }
    [[nodiscard]] double support_lower() const override { return lower_; }
    double draw(SampleStream& stream) const override;

private:
    double lower_;
    double upper_;
};

/// Law of a sum of independent exponential stages (phase-type with a
/// bidiagonal generator). Repeated stage rates are allowed.
///
/// Stages are stored in descending order; the law does not depend on the
/// order. The cdf uses the partial-fraction closed form when the rates are
/// well separated and its coefficients are small enough for the sum to be
/// accurate to about 1e-13 absolute; otherwise it evaluates the generator by
/// uniformization.
class Hypoexponential final : public ContinuousDist {
public:
    explicit Hypoexponential(std::vector<double> stage_rates);

    [[nodiscard]] std::span<const double> stage_rates() const noexcept { return rates_; }
    [[nodiscard]] std::size_t stage_count() const noexcept { return rates_.size(); }
    [[nodiscard]] bool uses_partial_fractions() const noexcept { return closed_form_; }

    [[nodiscard]] std::string_view kind() const override { return "hypoexponential"; }
    [[nodiscard]] double cdf(double x) const override;
    [[nodiscard]] double survival(double x) const override;
    [[nodiscard]] double mean() const override;
    [[nodiscard]] double variance() const;
    double draw(SampleStream& stream) const override;

    /// cdf by partial fractions; requires pairwise distinct rates.
    [[nodiscard]] double cdf_partial_fractions(double x) const;
    /// cdf by uniformization, truncation error below 1e-15.
    [[nodiscard]] double cdf_uniformized(double x) const;

private:
    [[nodiscard]] double survival_partial_fractions(double x) const;
    [[nodiscard]] double survival_uniformized(double x) const;

    std::vector<double> rates_;
    std::vector<double> coefficients_;  // partial-fraction weights, empty if unavailable
    bool closed_form_ = false;
};

/// P(T <= t) for T hypoexponential with the given stage rates.
[[nodiscard]] double hypoexp_cdf(std::span<const double> stage_rates, double t);

/// Finite mixture sum_c w_c F_c. Weights must lie in (0,1] and sum to 1
/// within 1e-12.
class FiniteMixture final : public ContinuousDist {
public:
    struct Component {
        double weight;
        DistPtr dist;
    };

    explicit FiniteMixture(std::vector<Component> components);

    [[nodiscard]] std::span<const Component> components() const noexcept { return components_; }

    [[nodiscard]] std::string_view kind() const override { return "mixture"; }
    [[nodiscard]] double cdf(double x) const override;
    [[nodiscard]] double survival(double x) const override;
    [[nodiscard]] double mean() const override;
    [[nodiscard]] double support_lower() const override { return lower_; }
    double draw(SampleStream& stream) const override;

private:
    std::vector<Component> components_;
    std::vector<double> cumulative_;
    double lower_ = 0.0;
};

/// Step cdf with mass 1/m at each sample point.
class Empirical final : public ContinuousDist {
public:
    explicit Empirical(std::vector<double> sample);

    [[nodiscard]] std::span<const double> sorted_sample() const noexcept { return sorted_; }
    [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }

    [[nodiscard]] std::string_view kind() const override { return "empirical"; }
    [[nodiscard]] double cdf(double x) const override;
    /// The ceil(u m)-th order statistic.
    [[nodiscard]] double quantile(double u) const override;
    [[nodiscard]] double mean() const override { return mean_; }
    [[nodiscard]] double support_lower() const override { return sorted_.front(); }
    /// Resamples one observation uniformly.
    double draw(SampleStream& stream) const override;

private:
    std::vector<double> sorted_;
    double mean_ = 0.0;
};

/// Law of offset + X.
class Shifted final : public ContinuousDist {
public:
    Shifted(DistPtr base, double offset);

    [[nodiscard]] const DistPtr& base() const noexcept { return base_; }
    [[nodiscard]] double offset() const noexcept { return offset_; }

    [[nodiscard]] std::string_view kind() const override { return "shifted"; }
    [[nodiscard]] double cdf(double x) const override { return base_->cdf(x - offset_); }
    [[nodiscard]] double survival(double x) const override { return base_->survival(x - offset_); }
    [[nodiscard]] double quantile(double u) const override { return offset_ + base_->quantile(u); }
    [[nodiscard]] double mean() const override { return offset_ + base_->mean(); }
    [[nodiscard]] double support_lower() const override { return offset_ + base_->support_lower(); }
    double draw(SampleStream& stream) const override { return offset_ + base_->draw(stream); }

private:
    DistPtr base_;
    double offset_;
};

/// Empirical law of a nonempty sample.
[[nodiscard]] DistPtr ecdf(std::vector<double> sample);

}  // namespace orderstats
