#include "orderstats/rate_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orderstats/errors.hpp"

namespace orderstats {

RateVector::RateVector(std::vector<double> rates) : rates_(std::move(rates)) {
    if (rates_.size() < 2) {
        throw InvalidParameter("RateVector: need at least two rates");
    }
    for (std::size_t k = 0; k < rates_.size(); ++k) {
        if (!(rates_[k] > 0.0) || !std::isfinite(rates_[k])) {
            throw InvalidParameter("RateVector: rate " + std::to_string(k) +
                                   " must be positive and finite");
        }
        total_ += rates_[k];
    }
}

RateVector RateVector::homogeneous(std::size_t n, double rate) {
    return RateVector(std::vector<double>(n, rate));
}

bool RateVector::is_homogeneous() const noexcept {
    return std::all_of(rates_.begin(), rates_.end(), [&](double r) { return r == rates_.front(); });
}

RateVector RateVector::homogenized() const { return homogeneous(rates_.size(), mean_rate()); }

}  // namespace orderstats
