#pragma once

#include <string>
#include <vector>

#include "orderstats/copula.hpp"
#include "orderstats/distribution.hpp"
#include "orderstats/order_statistics.hpp"
#include "orderstats/verdict.hpp"

namespace orderstats {

inline constexpr int kDefaultGridResolution = 200;
inline constexpr int kDefaultSiResolution = 20;
inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kSiTolerance = 1e-8;

/// Evaluation grids. `u` is k/u_resolution for k = 1..u_resolution-1 and
/// `pq` is k/si_resolution likewise; SI checks use every pair p < q of `pq`.
struct GridSpec {
    int u_resolution = kDefaultGridResolution;
    int si_resolution = kDefaultSiResolution;

    [[nodiscard]] std::vector<double> u() const;
    [[nodiscard]] std::vector<double> pq() const;
    [[nodiscard]] std::string describe() const;
    /// Throws InvalidInput unless both resolutions are at least 2.
    void validate() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// X <= Y in the usual stochastic order, F and G the cdfs of X and Y. The
/// x-grid pools F^{-1}(u) and G^{-1}(u); the excess is G(x) - F(x).
[[nodiscard]] OrderVerdict check_st(const ContinuousDist& f, const ContinuousDist& g,
                                    const GridSpec& grid = {}, double tolerance = kExactTolerance);

/// F <= G in the dispersive order: delta(u) = G^{-1}(u) - F^{-1}(u) must be
/// nondecreasing; the excess is delta(u_k) - delta(u_{k+1}).
[[nodiscard]] OrderVerdict check_disp(const ContinuousDist& f, const ContinuousDist& g,
                                      const GridSpec& grid = {}, double tolerance = kExactTolerance);

/// F <= G in the star order on nonnegative supports, through the ratio
/// G^{-1}(u) / F^{-1}(u), which must be nondecreasing.
[[nodiscard]] OrderVerdict check_star(const ContinuousDist& f, const ContinuousDist& g,
                                      const GridSpec& grid = {}, double tolerance = kExactTolerance);

/// Pair 2 more stochastically increasing than pair 1: for p < q on the pq
/// grid and u on the u grid,
///   H2_{xi2(q)}(H2_{xi2(p)}^{-1}(u)) <= H1_{xi1(q)}(H1_{xi1(p)}^{-1}(u)),
/// where xi_k(p) is the p-quantile of marginal k. The excess is lhs - rhs.
[[nodiscard]] OrderVerdict check_more_si(const ConditionalFamily& family1,
                                         const ContinuousDist& marginal1,
                                         const ConditionalFamily& family2,
                                         const ContinuousDist& marginal2, const GridSpec& grid = {},
                                         double tolerance = kSiTolerance);

/// C1 <= C2 pointwise. The tolerance is the sum of the two confidence radii.
[[nodiscard]] OrderVerdict check_pqd(const CopulaGrid& c1, const CopulaGrid& c2);

// Curve data behind the checks, for reporting and plotting.

struct QuantileCurve {
    std::vector<double> u;
    std::vector<double> f_inv;
    std::vector<double> g_inv;
};

[[nodiscard]] QuantileCurve quantile_curve(const ContinuousDist& f, const ContinuousDist& g,
                                           const GridSpec& grid = {});

struct SiCurveRow {
    double p;
    double q;
    double u;
    double lhs;  // pair 2
    double rhs;  // pair 1
};

[[nodiscard]] std::vector<SiCurveRow> more_si_curve(const ConditionalFamily& family1,
                                                    const ContinuousDist& marginal1,
                                                    const ConditionalFamily& family2,
                                                    const ContinuousDist& marginal2,
                                                    const GridSpec& grid = {});

}  // namespace orderstats
