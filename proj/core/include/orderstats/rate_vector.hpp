#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace orderstats {

/// Hazard rates of n >= 2 independent exponential lifetimes.
///
/// Distinct rates are not required; ties are handled by every consumer.
class RateVector {
public:
    explicit RateVector(std::vector<double> rates);

    /// n copies of `rate`.
    static RateVector homogeneous(std::size_t n, double rate);

    [[nodiscard]] std::span<const double> rates() const noexcept { return rates_; }
    [[nodiscard]] double operator[](std::size_t k) const { return rates_[k]; }
    [[nodiscard]] std::size_t size() const noexcept { return rates_.size(); }

    [[nodiscard]] double total_rate() const noexcept { return total_; }
    /// (sum of rates) / n.
    [[nodiscard]] double mean_rate() const noexcept { return total_ / static_cast<double>(rates_.size()); }

    [[nodiscard]] bool is_homogeneous() const noexcept;

    /// The i.i.d. counterpart: n copies of mean_rate().
    [[nodiscard]] RateVector homogenized() const;

private:
    std::vector<double> rates_;
    double total_ = 0.0;
};

}  // namespace orderstats
