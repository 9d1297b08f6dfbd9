#include "orderstats/concordance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "orderstats/copula.hpp"
#include "orderstats/errors.hpp"
#include "orderstats/order_statistics.hpp"

namespace orderstats {

namespace {

std::vector<std::size_t> sorted_order(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return order;
}

void require_pairs(std::span<const Pair> pairs, const char* who) {
    if (pairs.size() < 2) {
        throw InvalidInput(std::string(who) + ": need at least two pairs");
    }
    const auto [xmin, xmax] = std::minmax_element(pairs.begin(), pairs.end(),
                                                  [](const Pair& a, const Pair& b) { return a.first < b.first; });
    const auto [ymin, ymax] = std::minmax_element(pairs.begin(), pairs.end(),
                                                  [](const Pair& a, const Pair& b) { return a.second < b.second; });
    if (xmin->first == xmax->first || ymin->second == ymax->second) {
        throw DegenerateInput(std::string(who) + ": a coordinate is constant");
    }
}

double pairs_total(std::size_t m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); }

std::uint64_t tied_pairs(std::span<const double> sorted) {
    std::uint64_t total = 0;
    std::uint64_t run = 1;
    for (std::size_t k = 1; k <= sorted.size(); ++k) {
        if (k < sorted.size() && sorted[k] == sorted[k - 1]) {
            ++run;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    return total;
}

// Sorts ys ascending and returns the number of strict inversions.
std::uint64_t merge_count(std::vector<double>& ys, std::vector<double>& buffer, std::size_t lo,
                          std::size_t hi) {
    if (hi - lo < 2) {
        return 0;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t swaps = merge_count(ys, buffer, lo, mid) + merge_count(ys, buffer, mid, hi);
    std::size_t a = lo;
    std::size_t b = mid;
    std::size_t out = lo;
    while (a < mid && b < hi) {
        if (ys[b] < ys[a]) {
            swaps += mid - a;
            buffer[out++] = ys[b++];
        } else {
            buffer[out++] = ys[a++];
        }
    }
    while (a < mid) {
        buffer[out++] = ys[a++];
    }
    while (b < hi) {
        buffer[out++] = ys[b++];
    }
    std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo), buffer.begin() + static_cast<std::ptrdiff_t>(hi),
              ys.begin() + static_cast<std::ptrdiff_t>(lo));
    return swaps;
}

double pearson_of(std::span<const double> xs, std::span<const double> ys) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double dx = xs[k] - mx;
        const double dy = ys[k] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0 && syy > 0.0)) {
        throw DegenerateInput("pearson: zero variance");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

std::vector<std::size_t> strict_ranks(std::span<const double> values) {
    const auto order = sorted_order(values);
    std::vector<std::size_t> ranks(values.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0 && values[order[k]] == values[order[k - 1]]) {
            throw InvalidInput("tied values detected; continuous inputs required");
        }
        ranks[order[k]] = k + 1;
    }
    return ranks;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const auto order = sorted_order(values);
    std::vector<double> ranks(values.size());
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() && values[order[end]] == values[order[start]]) {
            ++end;
        }
        const double mid_rank = 0.5 * static_cast<double>(start + 1 + end);
        for (std::size_t k = start; k < end; ++k) {
            ranks[order[k]] = mid_rank;
        }
        start = end;
    }
    return ranks;
}

double empirical_tau_pair_scan(std::span<const Pair> pairs) {
    require_pairs(pairs, "empirical_tau");
    std::int64_t score = 0;
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const double dx = pairs[a].first - pairs[b].first;
            const double dy = pairs[a].second - pairs[b].second;
            const double s = dx * dy;
            score += (s > 0.0) - (s < 0.0);
        }
    }
    return static_cast<double>(score) / pairs_total(pairs.size());
}

double empirical_tau_merge_sort(std::span<const Pair> pairs) {
    require_pairs(pairs, "empirical_tau");
    std::vector<Pair> sorted(pairs.begin(), pairs.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> xs(sorted.size());
    std::vector<double> ys(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        xs[k] = sorted[k].first;
        ys[k] = sorted[k].second;
    }
    std::uint64_t joint_ties = 0;
    std::uint64_t run = 1;
    for (std::size_t k = 1; k <= sorted.size(); ++k) {
        if (k < sorted.size() && sorted[k] == sorted[k - 1]) {
            ++run;
        } else {
            joint_ties += run * (run - 1) / 2;
            run = 1;
        }
    }
    const std::uint64_t x_ties = tied_pairs(xs);
    std::vector<double> buffer(ys.size());
    const std::uint64_t swaps = merge_count(ys, buffer, 0, ys.size());
    const std::uint64_t y_ties = tied_pairs(ys);

    const double total = pairs_total(pairs.size());
    const double score = total - static_cast<double>(x_ties) - static_cast<double>(y_ties) +
                         static_cast<double>(joint_ties) - 2.0 * static_cast<double>(swaps);
    return score / total;
}

double empirical_tau(std::span<const Pair> pairs) {
    return pairs.size() <= kTauPairScanLimit ? empirical_tau_pair_scan(pairs)
                                             : empirical_tau_merge_sort(pairs);
}

double empirical_rho(std::span<const Pair> pairs) {
    require_pairs(pairs, "empirical_rho");
    std::vector<double> xs(pairs.size());
    std::vector<double> ys(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        xs[k] = pairs[k].first;
        ys[k] = pairs[k].second;
    }
    return pearson_of(average_ranks(xs), average_ranks(ys));
}

double pearson_corr(std::span<const Pair> pairs) {
    require_pairs(pairs, "pearson_corr");
    std::vector<double> xs(pairs.size());
    std::vector<double> ys(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        xs[k] = pairs[k].first;
        ys[k] = pairs[k].second;
    }
    return pearson_of(xs, ys);
}

ConcordanceReport concordance(std::span<const Pair> pairs) {
    return {empirical_tau(pairs), empirical_rho(pairs), pearson_corr(pairs),
            ConcordanceReport::Source::empirical};
}

SatheResult sathe_check(const RateVector& rv, std::size_t j) {
    if (j < 2 || j > rv.size()) {
        throw InvalidInput("sathe_check: need 2 <= j <= n, got j=" + std::to_string(j));
    }
    const double hetero = exact_min_corr(rv, j);
    const double homo = exact_min_corr(rv.homogenized(), j);
    return {hetero, homo, hetero <= homo + kCorrelationTolerance};
}

std::vector<Pair> sample_iid_order_pair(const ContinuousDist& parent, std::size_t n, std::size_t a,
                                        std::size_t b, SampleStream& stream, std::size_t m) {
    if (n < 2 || a < 1 || b < 1 || a > n || b > n) {
        throw InvalidInput("sample_iid_order_pair: indices must lie in 1..n with n >= 2");
    }
    std::vector<Pair> pairs;
    pairs.reserve(m);
    std::vector<double> row(n);
    for (std::size_t k = 0; k < m; ++k) {
        for (auto& x : row) {
            x = parent.draw(stream);
        }
        std::sort(row.begin(), row.end());
        pairs.emplace_back(row[a - 1], row[b - 1]);
    }
    return pairs;
}

OrderVerdict copula_distribution_free_check(std::size_t n, std::size_t i,
                                            const ContinuousDist& parent_a,
                                            const ContinuousDist& parent_b, std::size_t m,
                                            SampleStream stream_a, SampleStream stream_b) {
    if (i < 2 || i > n) {
        throw InvalidInput("copula_distribution_free_check: need 2 <= i <= n");
    }
    if (m < kMinCopulaFreeSamples) {
        throw InvalidInput("copula_distribution_free_check: need m >= 10^4");
    }
    const auto pairs_a = sample_iid_order_pair(parent_a, n, 1, i, stream_a, m);
    const auto pairs_b = sample_iid_order_pair(parent_b, n, 1, i, stream_b, m);
    CopulaGrid ca = [&] {
        try {
            return empirical_copula(pairs_a);
        } catch (const InvalidInput& e) {
            throw InvalidInput(std::string("parent a looks discrete: ") + e.what());
        }
    }();
    CopulaGrid cb = [&] {
        try {
            return empirical_copula(pairs_b);
        } catch (const InvalidInput& e) {
            throw InvalidInput(std::string("parent b looks discrete: ") + e.what());
        }
    }();

    ViolationTracker tracker;
    const int r = ca.resolution();
    for (int a = 1; a <= r; ++a) {
        for (int b = 1; b <= r; ++b) {
            tracker.observe(std::abs(ca.at(a, b) - cb.at(a, b)),
                            {{"u", ca.coordinate(a)}, {"v", ca.coordinate(b)}});
        }
    }
    return tracker.verdict("copula-free",
                           std::to_string(r) + "x" + std::to_string(r) + " copula lattice",
                           ca.confidence_radius() + cb.confidence_radius());
}

}  // namespace orderstats
