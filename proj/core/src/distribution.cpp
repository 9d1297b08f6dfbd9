#include "orderstats/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "orderstats/errors.hpp"

namespace orderstats {

namespace {

constexpr int kMaxInversionIterations = 200;

void require_probability(double u, const char* who) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError(std::string(who) + ": probability must lie in (0,1), got " +
                          std::to_string(u));
    }
}

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidParameter(std::string(what) + " must be positive and finite, got " +
                               std::to_string(value));
    }
}

}  // namespace

double invert_cdf(const ContinuousDist& dist, double u) {
    require_probability(u, "quantile");
    const double origin = dist.support_lower();
    double lo = origin;
    double width = std::max(dist.mean() - origin, std::numeric_limits<double>::min());
    double hi = origin + width;

    int iterations = 0;
    while (dist.cdf(hi) < u) {
        if (++iterations > kMaxInversionIterations) {
            throw DegenerateInput("quantile: bracket expansion did not cover u");
        }
        lo = hi;
        width *= 2.0;
        hi = origin + width;
    }
    // The first bracket may start strictly inside the support.
    if (lo == origin && dist.cdf(lo) >= u) {
        return lo;
    }
    while (hi - lo > std::max(1e-12, 1e-12 * std::abs(hi)) && iterations < kMaxInversionIterations) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (dist.cdf(mid) >= u) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++iterations;
    }
    return hi;
}

double ContinuousDist::quantile(double u) const { return invert_cdf(*this, u); }

double ContinuousDist::cumulative_hazard(double x) const {
    const double s = survival(x);
    if (!(s > 0.0)) {
        throw DegenerateInput("cumulative_hazard: survival is zero at x = " + std::to_string(x));
    }
    return -std::log(s);
}

double ContinuousDist::inverse_cumulative_hazard(double h) const {
    require_positive(h, "cumulative hazard level");
    return quantile(-std::expm1(-h));
}

std::vector<double> ContinuousDist::sample(SampleStream& stream, std::size_t m) const {
    if (m == 0) {
        throw InvalidInput("sample: m must be at least 1");
    }
    std::vector<double> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        out.push_back(draw(stream));
    }
    return out;
}

// --- Exponential ------------------------------------------------------------

Exponential::Exponential(double rate) : rate_(rate) { require_positive(rate, "exponential rate"); }

double Exponential::cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }

double Exponential::survival(double x) const { return x <= 0.0 ? 1.0 : std::exp(-rate_ * x); }

double Exponential::quantile(double u) const {
    require_probability(u, "exponential quantile");
    return -std::log1p(-u) / rate_;
}

double Exponential::cumulative_hazard(double x) const { return x <= 0.0 ? 0.0 : rate_ * x; }

double Exponential::inverse_cumulative_hazard(double h) const {
    require_positive(h, "cumulative hazard level");
    return h / rate_;
}

double Exponential::draw(SampleStream& stream) const { return quantile(stream.uniform_open()); }

// --- Weibull ----------------------------------------------------------------

Weibull::Weibull(double shape, double scale) : shape_(shape), scale_(scale) {
    require_positive(shape, "weibull shape");
    require_positive(scale, "weibull scale");
}

double Weibull::cdf(double x) const {
    return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / scale_, shape_));
}

double Weibull::survival(double x) const {
    return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / scale_, shape_));
}

double Weibull::quantile(double u) const {
    require_probability(u, "weibull quantile");
    return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
}

double Weibull::mean() const { return scale_ * std::tgamma(1.0 + 1.0 / shape_); }

double Weibull::cumulative_hazard(double x) const {
    return x <= 0.0 ? 0.0 : std::pow(x / scale_, shape_);
}

double Weibull::inverse_cumulative_hazard(double h) const {
    require_positive(h, "cumulative hazard level");
    return scale_ * std::pow(h, 1.0 / shape_);
}

double Weibull::draw(SampleStream& stream) const { return quantile(stream.uniform_open()); }

// --- Uniform ----------------------------------------------------------------

Uniform::Uniform(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!(upper > lower) || !std::isfinite(lower) || !std::isfinite(upper)) {
        throw InvalidParameter("uniform: need finite lower < upper");
    }
}

double Uniform::cdf(double x) const {
    if (x <= lower_) {
        return 0.0;
    }
    if (x >= upper_) {
        return 1.0;
    }
    return (x - lower_) / (upper_ - lower_);
}

double Uniform::quantile(double u) const {
    require_probability(u, "uniform quantile");
    return lower_ + u * (upper_ - lower_);
}

double Uniform::draw(SampleStream& stream) const { return quantile(stream.uniform_open()); }

// --- FiniteMixture ----------------------------------------------------------

FiniteMixture::FiniteMixture(std::vector<Component> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw InvalidParameter("mixture: at least one component required");
    }
    double total = 0.0;
    lower_ = std::numeric_limits<double>::infinity();
    cumulative_.reserve(components_.size());
    for (const auto& c : components_) {
        if (!(c.weight > 0.0 && c.weight <= 1.0)) {
            throw InvalidParameter("mixture: weights must lie in (0,1]");
        }
        if (!c.dist) {
            throw InvalidParameter("mixture: null component");
        }
        total += c.weight;
        cumulative_.push_back(total);
        lower_ = std::min(lower_, c.dist->support_lower());
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw InvalidParameter("mixture: weights sum to " + std::to_string(total) + ", not 1");
    }
}

double FiniteMixture::cdf(double x) const {
    double acc = 0.0;
    for (const auto& c : components_) {
        acc += c.weight * c.dist->cdf(x);
    }
    return acc;
}

double FiniteMixture::survival(double x) const {
    double acc = 0.0;
    for (const auto& c : components_) {
        acc += c.weight * c.dist->survival(x);
    }
    return acc;
}

double FiniteMixture::mean() const {
    double acc = 0.0;
    for (const auto& c : components_) {
        acc += c.weight * c.dist->mean();
    }
    return acc;
}

double FiniteMixture::draw(SampleStream& stream) const {
    const double u = stream.uniform_open() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
        --it;
    }
    return components_[static_cast<std::size_t>(it - cumulative_.begin())].dist->draw(stream);
}

// --- Empirical --------------------------------------------------------------

Empirical::Empirical(std::vector<double> sample) : sorted_(std::move(sample)) {
    if (sorted_.empty()) {
        throw InvalidInput("ecdf: empty sample");
    }
    for (double x : sorted_) {
        if (!std::isfinite(x)) {
            throw InvalidInput("ecdf: non-finite observation");
        }
    }
    std::sort(sorted_.begin(), sorted_.end());
    mean_ = std::accumulate(sorted_.begin(), sorted_.end(), 0.0) / static_cast<double>(sorted_.size());
}

double Empirical::cdf(double x) const {
    const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
    return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double Empirical::quantile(double u) const {
    require_probability(u, "empirical quantile");
    const auto m = static_cast<double>(sorted_.size());
    auto rank = static_cast<std::size_t>(std::ceil(u * m));
    rank = std::clamp<std::size_t>(rank, 1, sorted_.size());
    // Guard against u*m rounding just above an integer.
    if (rank > 1 && static_cast<double>(rank - 1) / m >= u) {
        --rank;
    }
    return sorted_[rank - 1];
}

double Empirical::draw(SampleStream& stream) const {
    return sorted_[static_cast<std::size_t>(stream.uniform_index(sorted_.size()))];
}

// --- Shifted ----------------------------------------------------------------

Shifted::Shifted(DistPtr base, double offset) : base_(std::move(base)), offset_(offset) {
    if (!base_) {
        throw InvalidParameter("shifted: null base distribution");
    }
    if (!std::isfinite(offset)) {
        throw InvalidParameter("shifted: offset must be finite");
    }
}

DistPtr ecdf(std::vector<double> sample) { return std::make_shared<const Empirical>(std::move(sample)); }

}  // namespace orderstats
