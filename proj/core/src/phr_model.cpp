#include "orderstats/phr_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "orderstats/copula.hpp"
#include "orderstats/errors.hpp"
#include "orderstats/numerics.hpp"

namespace orderstats {

PHRModel::PHRModel(DistPtr baseline, RateVector parameters)
    : baseline_(std::move(baseline)), parameters_(std::move(parameters)) {
    if (!baseline_) {
        throw InvalidParameter("PHRModel: null baseline");
    }
}

PHRModel PHRModel::homogenized() const { return PHRModel(baseline_, parameters_.homogenized()); }

DistPtr PHRModel::component(std::size_t k) const {
    return std::make_shared<const PowerSurvival>(baseline_, parameters_[k]);
}

// --- PowerSurvival ----------------------------------------------------------

PowerSurvival::PowerSurvival(DistPtr baseline, double exponent)
    : baseline_(std::move(baseline)), exponent_(exponent) {
    if (!baseline_) {
        throw InvalidParameter("PowerSurvival: null baseline");
    }
    if (!(exponent > 0.0) || !std::isfinite(exponent)) {
        throw InvalidParameter("PowerSurvival: exponent must be positive");
    }
}

double PowerSurvival::cumulative_hazard(double x) const {
    return exponent_ * baseline_->cumulative_hazard(x);
}

double PowerSurvival::inverse_cumulative_hazard(double h) const {
    return baseline_->inverse_cumulative_hazard(h / exponent_);
}

double PowerSurvival::cdf(double x) const {
    if (x <= support_lower()) {
        return 0.0;
    }
    return -std::expm1(-cumulative_hazard(x));
}

double PowerSurvival::survival(double x) const {
    if (x <= support_lower()) {
        return 1.0;
    }
    return std::exp(-cumulative_hazard(x));
}

double PowerSurvival::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError("phr quantile: probability must lie in (0,1)");
    }
    return inverse_cumulative_hazard(-std::log1p(-u));
}

double PowerSurvival::mean() const {
    const double lower = support_lower();
    if (!std::isfinite(lower)) {
        throw DomainError("phr mean: baseline support must be bounded below");
    }
    boost::math::quadrature::exp_sinh<double> integrator;
    return lower + integrator.integrate([&](double t) { return survival(lower + t); });
}

double PowerSurvival::draw(SampleStream& stream) const {
    return inverse_cumulative_hazard(stream.standard_exponential());
}

// --- HazardScaleFamily ------------------------------------------------------

HazardScaleFamily::HazardScaleFamily(DistPtr spacing, DistPtr baseline)
    : spacing_(std::move(spacing)), baseline_(std::move(baseline)) {
    if (!spacing_ || !baseline_) {
        throw InvalidParameter("HazardScaleFamily: null law");
    }
}

double HazardScaleFamily::cdf(double x, double t) const {
    if (t <= x) {
        return 0.0;
    }
    return spacing_->cdf(baseline_->cumulative_hazard(t) - baseline_->cumulative_hazard(x));
}

double HazardScaleFamily::quantile(double x, double u) const {
    return baseline_->inverse_cumulative_hazard(baseline_->cumulative_hazard(x) + spacing_->quantile(u));
}

namespace {

// Law of R^{-1}(R(x) + S) for fixed x.
class HazardShifted final : public ContinuousDist {
public:
    HazardShifted(DistPtr spacing, DistPtr baseline, double x)
        : family_(spacing, baseline), spacing_(std::move(spacing)), baseline_(std::move(baseline)), x_(x) {}

    [[nodiscard]] std::string_view kind() const override { return "phr-conditional"; }
    [[nodiscard]] double cdf(double t) const override { return family_.cdf(x_, t); }
    [[nodiscard]] double quantile(double u) const override { return family_.quantile(x_, u); }
    [[nodiscard]] double mean() const override { return family_.quantile(x_, 0.5); }
    [[nodiscard]] double support_lower() const override { return x_; }
    double draw(SampleStream& stream) const override {
        return baseline_->inverse_cumulative_hazard(baseline_->cumulative_hazard(x_) + spacing_->draw(stream));
    }

private:
    HazardScaleFamily family_;
    DistPtr spacing_;
    DistPtr baseline_;
    double x_;
};

}  // namespace

DistPtr HazardScaleFamily::at(double x) const {
    return std::make_shared<const HazardShifted>(spacing_, baseline_, x);
}

// --- Operations -------------------------------------------------------------

SampleMatrix phr_sample(const PHRModel& model, SampleStream& stream, std::size_t m) {
    if (m == 0) {
        throw InvalidInput("phr_sample: m must be at least 1");
    }
    SampleMatrix out;
    out.rows = m;
    out.cols = model.size();
    out.data.reserve(m * out.cols);
    const auto& baseline = *model.baseline();
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t k = 0; k < out.cols; ++k) {
            out.data.push_back(baseline.inverse_cumulative_hazard(stream.standard_exponential() /
                                                                  model.parameters()[k]));
        }
    }
    return out;
}

double phr_transform(const PHRModel& model, double x) {
    if (!std::isfinite(x)) {
        throw DomainError("phr_transform: x must be finite");
    }
    if (!(model.baseline()->survival(x) > 0.0)) {
        throw DegenerateInput("phr_transform: baseline survival is zero at x = " + std::to_string(x));
    }
    return model.baseline()->cumulative_hazard(x);
}

std::vector<double> phr_transformed_marginal_ks(const PHRModel& model, SampleStream& stream,
                                                std::size_t m) {
    const SampleMatrix draws = phr_sample(model, stream, m);
    std::vector<double> distances;
    for (std::size_t k = 0; k < model.size(); ++k) {
        std::vector<double> column(m);
        for (std::size_t r = 0; r < m; ++r) {
            column[r] = phr_transform(model, draws.at(r, k));
        }
        const Exponential target(model.parameters()[k]);
        distances.push_back(numerics::ks_distance(column, [&](double x) { return target.cdf(x); }));
    }
    return distances;
}

std::vector<std::pair<double, double>> order_pairs(const SampleMatrix& sample, std::size_t a,
                                                   std::size_t b) {
    if (a < 1 || b < 1 || a > sample.cols || b > sample.cols) {
        throw InvalidInput("order_pairs: index out of range");
    }
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(sample.rows);
    std::vector<double> row(sample.cols);
    for (std::size_t r = 0; r < sample.rows; ++r) {
        const auto src = sample.row(r);
        std::copy(src.begin(), src.end(), row.begin());
        std::sort(row.begin(), row.end());
        pairs.emplace_back(row[a - 1], row[b - 1]);
    }
    return pairs;
}

namespace {

OrderVerdict copula_invariance(const PHRModel& model, std::size_t i, std::size_t m,
                               SampleStream& stream, bool& identical) {
    const SampleMatrix raw = phr_sample(model, stream, m);
    const auto pairs = order_pairs(raw, 1, i);
    std::vector<std::pair<double, double>> transformed;
    transformed.reserve(pairs.size());
    for (const auto& [lo, hi] : pairs) {
        transformed.emplace_back(phr_transform(model, lo), phr_transform(model, hi));
    }
    const CopulaGrid before = empirical_copula(pairs);
    const CopulaGrid after = empirical_copula(transformed);
    identical = identical && before == after;

    ViolationTracker tracker;
    for (int a = 1; a <= before.resolution(); ++a) {
        for (int b = 1; b <= before.resolution(); ++b) {
            tracker.observe(std::abs(before.at(a, b) - after.at(a, b)),
                            {{"u", before.coordinate(a)}, {"v", before.coordinate(b)}});
        }
    }
    const int r = before.resolution();
    return tracker.verdict("copula-invariance",
                           std::to_string(r) + "x" + std::to_string(r) + " copula lattice",
                           before.confidence_radius());
}

}  // namespace

PhrSiReport phr_si_check(const PHRModel& model, std::size_t i, const GridSpec& grid, std::size_t m,
                         SampleStream stream, double tolerance) {
    if (i < 2 || i > model.size()) {
        throw InvalidInput("phr_si_check: need 2 <= i <= n, got i=" + std::to_string(i));
    }
    const PHRModel iid = model.homogenized();

    // On the R scale the model is exponential with rates lambda; map the
    // exact exponential laws back to the original time scale.
    const HazardScaleFamily hetero_family(spacing_law(model.parameters(), 1, i).law(), model.baseline());
    const HazardScaleFamily homo_family(spacing_law(iid.parameters(), 1, i).law(), model.baseline());
    const PowerSurvival hetero_min(model.baseline(), model.parameters().total_rate());
    const PowerSurvival homo_min(model.baseline(), iid.parameters().total_rate());

    PhrSiReport report;
    report.si = check_more_si(hetero_family, hetero_min, homo_family, homo_min, grid, tolerance);
    report.si.order_name = "phr-si";

    report.copulas_identical = true;
    SampleStream hetero_stream = stream.child(0);
    SampleStream homo_stream = stream.child(1);
    report.copula_invariance_heterogeneous =
        copula_invariance(model, i, m, hetero_stream, report.copulas_identical);
    report.copula_invariance_homogeneous =
        copula_invariance(iid, i, m, homo_stream, report.copulas_identical);
    return report;
}

}  // namespace orderstats
