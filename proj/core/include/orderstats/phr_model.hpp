#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "orderstats/distribution.hpp"
#include "orderstats/order_statistics.hpp"
#include "orderstats/random.hpp"
#include "orderstats/rate_vector.hpp"
#include "orderstats/stochastic_orders.hpp"
#include "orderstats/verdict.hpp"

namespace orderstats {

/// Independent lifetimes with survival functions Fbar(t)^{lambda_i} for a
/// common continuous baseline Fbar.
class PHRModel {
public:
    PHRModel(DistPtr baseline, RateVector parameters);

    [[nodiscard]] const DistPtr& baseline() const noexcept { return baseline_; }
    [[nodiscard]] const RateVector& parameters() const noexcept { return parameters_; }
    [[nodiscard]] std::size_t size() const noexcept { return parameters_.size(); }

    /// Same baseline, every parameter replaced by the mean parameter.
    [[nodiscard]] PHRModel homogenized() const;

    /// Law of component k (0-based): survival Fbar^{lambda_k}.
    [[nodiscard]] DistPtr component(std::size_t k) const;

private:
    DistPtr baseline_;
    RateVector parameters_;
};

/// Row-major m x n matrix of draws.
struct SampleMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }
    [[nodiscard]] double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Law with survival Fbar(t)^{exponent}; cumulative hazard exponent * R(t).
class PowerSurvival final : public ContinuousDist {
public:
    PowerSurvival(DistPtr baseline, double exponent);

    [[nodiscard]] std::string_view kind() const override { return "phr"; }
    [[nodiscard]] double cdf(double x) const override;
    [[nodiscard]] double survival(double x) const override;
    [[nodiscard]] double quantile(double u) const override;
    [[nodiscard]] double mean() const override;
    [[nodiscard]] double support_lower() const override { return baseline_->support_lower(); }
    [[nodiscard]] double cumulative_hazard(double x) const override;
    [[nodiscard]] double inverse_cumulative_hazard(double h) const override;
    double draw(SampleStream& stream) const override;

private:
    DistPtr baseline_;
    double exponent_;
};

/// Conditional family of X_{i:n} given X_{1:n} = x in the original time
/// scale of a PHR model: H_x(t) = B(R(t) - R(x)), where B is the law of the
/// spacing of the exponentialized sample and R the baseline cumulative hazard.
class HazardScaleFamily final : public ConditionalFamily {
public:
    HazardScaleFamily(DistPtr spacing, DistPtr baseline);

    [[nodiscard]] double cdf(double x, double t) const override;
    [[nodiscard]] double quantile(double x, double u) const override;
    [[nodiscard]] DistPtr at(double x) const override;

private:
    DistPtr spacing_;
    DistPtr baseline_;
};

/// m rows of n draws; component k is Fbar^{-1}(U^{1/lambda_k}), computed as
/// R^{-1}(E / lambda_k) with E = -log U.
[[nodiscard]] SampleMatrix phr_sample(const PHRModel& model, SampleStream& stream, std::size_t m);

/// R(x) = -log Fbar(x). Throws DegenerateInput where Fbar(x) = 0.
[[nodiscard]] double phr_transform(const PHRModel& model, double x);

/// KS distance of R(X_k) against Exp(lambda_k) for every component k.
[[nodiscard]] std::vector<double> phr_transformed_marginal_ks(const PHRModel& model,
                                                              SampleStream& stream, std::size_t m);

struct PhrSiReport {
    /// More-SI check of (X_{i:n} | X_{1:n}) against its PHR i.i.d.
    /// counterpart, evaluated in the original time scale.
    OrderVerdict si;
    /// Sup distance between the copulas of (X_{1:n}, X_{i:n}) before and after
    /// the transform, for the heterogeneous and the i.i.d. model.
    OrderVerdict copula_invariance_heterogeneous;
    OrderVerdict copula_invariance_homogeneous;
    bool copulas_identical = false;

    [[nodiscard]] bool holds() const {
        return si.holds && copula_invariance_heterogeneous.holds && copula_invariance_homogeneous.holds;
    }
};

[[nodiscard]] PhrSiReport phr_si_check(const PHRModel& model, std::size_t i, const GridSpec& grid,
                                       std::size_t m, SampleStream stream,
                                       double tolerance = kSiTolerance);

/// Pairs (X_{a:n}, X_{b:n}) from the rows of a sample matrix, optionally
/// passed through the model's transform first.
[[nodiscard]] std::vector<std::pair<double, double>> order_pairs(const SampleMatrix& sample,
                                                                 std::size_t a, std::size_t b);

}  // namespace orderstats
