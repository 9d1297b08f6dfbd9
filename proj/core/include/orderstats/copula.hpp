#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace orderstats {

inline constexpr int kDefaultCopulaResolution = 50;
inline constexpr double kCopulaSignificance = 0.01;

/// Copula values C(a/r, b/r) on the lattice a, b = 1..r.
///
/// For estimates, `confidence_radius` is sqrt(log(2/0.01) / (2 m)); exact
/// grids built from a formula carry radius 0 and sample size 0.
class CopulaGrid {
public:
    CopulaGrid(int resolution, std::vector<double> values, std::size_t sample_size,
               double confidence_radius);

    static CopulaGrid from_function(int resolution, const std::function<double(double, double)>& c);

    [[nodiscard]] int resolution() const noexcept { return resolution_; }
    [[nodiscard]] std::size_t sample_size() const noexcept { return sample_size_; }
    [[nodiscard]] double confidence_radius() const noexcept { return radius_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    /// Lattice coordinate a/r, a in 1..r.
    [[nodiscard]] double coordinate(int a) const;
    /// C(a/r, b/r), a and b in 1..r.
    [[nodiscard]] double at(int a, int b) const;

    /// Largest excursion outside the Frechet bounds max(u+v-1,0) <= C <= min(u,v).
    [[nodiscard]] double frechet_excess() const;
    /// max_a |C(u_a, v_max) - u_a| and the symmetric v-margin.
    [[nodiscard]] double margin_excess() const;

    friend bool operator==(const CopulaGrid&, const CopulaGrid&) = default;

private:
    int resolution_;
    std::vector<double> values_;
    std::size_t sample_size_;
    double radius_;
};

[[nodiscard]] double copula_confidence_radius(std::size_t sample_size,
                                              double significance = kCopulaSignificance);

/// Empirical copula C_m(u,v) = (1/m) #{k : R_k/m <= u, S_k/m <= v} from the
/// coordinate ranks. Requires m >= 100 and no tied values in either
/// coordinate; ties abort rather than being jittered.
[[nodiscard]] CopulaGrid empirical_copula(std::span<const std::pair<double, double>> pairs,
                                          int resolution = kDefaultCopulaResolution);

/// Largest |C1 - C2| over a shared lattice.
[[nodiscard]] double copula_sup_distance(const CopulaGrid& c1, const CopulaGrid& c2);

}  // namespace orderstats
