#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orderstats/distribution.hpp"
#include "orderstats/rate_vector.hpp"
#include "orderstats/verdict.hpp"

namespace orderstats {

using Pair = std::pair<double, double>;

/// Ranks 1..m of `values`; throws InvalidInput on any tie.
[[nodiscard]] std::vector<std::size_t> strict_ranks(std::span<const double> values);

/// Mid-ranks (ties share their average rank).
[[nodiscard]] std::vector<double> average_ranks(std::span<const double> values);

/// Above this size empirical_tau switches from the pair scan to merge-sort
/// inversion counting.
inline constexpr std::size_t kTauPairScanLimit = 20'000;

/// Kendall's tau-a, (concordant - discordant) / C(m, 2). Tied pairs count
/// as neither.
[[nodiscard]] double empirical_tau(std::span<const Pair> pairs);
[[nodiscard]] double empirical_tau_pair_scan(std::span<const Pair> pairs);
[[nodiscard]] double empirical_tau_merge_sort(std::span<const Pair> pairs);

/// Spearman's rho: Pearson correlation of the coordinate mid-ranks.
[[nodiscard]] double empirical_rho(std::span<const Pair> pairs);

[[nodiscard]] double pearson_corr(std::span<const Pair> pairs);

struct ConcordanceReport {
    enum class Source { exact, empirical };
    double kendall_tau = 0.0;
    double spearman_rho = 0.0;
    double pearson_corr = 0.0;
    Source source = Source::empirical;
};

[[nodiscard]] ConcordanceReport concordance(std::span<const Pair> pairs);

/// Exact correlations of (X_{1:n}, X_{j:n}) under rv and under its i.i.d.
/// counterpart, and whether the heterogeneous one is the smaller.
struct SatheResult {
    double heterogeneous;
    double homogeneous;
    bool holds;
};

/// Slack allowed when comparing the two exact correlations.
inline constexpr double kCorrelationTolerance = 1e-12;

[[nodiscard]] SatheResult sathe_check(const RateVector& rv, std::size_t j);

/// Compares the empirical copulas of (Y_{1:n}, Y_{i:n}) for i.i.d. samples
/// from two parents, m rows each. Holds iff the sup lattice difference is at
/// most the sum of the two confidence radii. Parent a draws from stream_a and
/// parent b from stream_b; passing equal streams gives common random numbers.
[[nodiscard]] OrderVerdict copula_distribution_free_check(std::size_t n, std::size_t i,
                                                          const ContinuousDist& parent_a,
                                                          const ContinuousDist& parent_b,
                                                          std::size_t m, SampleStream stream_a,
                                                          SampleStream stream_b);

inline constexpr std::size_t kMinCopulaFreeSamples = 10'000;

/// m draws of (Y_{a:n}, Y_{b:n}) for an i.i.d. sample of size n from `parent`.
[[nodiscard]] std::vector<Pair> sample_iid_order_pair(const ContinuousDist& parent, std::size_t n,
                                                      std::size_t a, std::size_t b,
                                                      SampleStream& stream, std::size_t m);

}  // namespace orderstats
