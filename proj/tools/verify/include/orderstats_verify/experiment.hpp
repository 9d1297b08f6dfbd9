#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "orderstats/copula.hpp"
#include "orderstats/random.hpp"
#include "orderstats_verify/config.hpp"
#include "orderstats_verify/report.hpp"

namespace orderstats::verify {

/// Stream index of each Monte Carlo check under the master seed, fixed so a
/// check's draws do not depend on which other checks run.
enum class StreamIndex : std::uint64_t { pqd = 1, tau = 2, phr = 3, copula_free = 4 };

[[nodiscard]] SampleStream check_stream(const ExperimentConfig& config, StreamIndex index);

/// Hoeffding bound for a U-statistic with kernel range 2 (Kendall's tau) at
/// significance alpha: sqrt(2 log(2/alpha) / floor(m/2)).
[[nodiscard]] double tau_confidence_radius(std::size_t m, double alpha = 0.01);

/// Runs every requested check in the order they are listed. Numerical
/// failures become check-level errors; the report is deterministic in the
/// config apart from its timing block.
[[nodiscard]] Report run_experiment(const ExperimentConfig& config);

/// Empirical copulas of (X_{1:n}, X_{j:n}) under the configured rates and
/// their homogenization, as used by the pqd check.
[[nodiscard]] std::pair<CopulaGrid, CopulaGrid> pqd_copulas(const ExperimentConfig& config);

/// Writes one CSV table per curve-capable requested check into `out_dir`:
///   disp.csv  u,F_inv,G_inv,delta
///   star.csv  u,F_inv,G_inv,ratio
///   si.csv    p,q,u,lhs,rhs
///   pqd.csv   u,v,c_heterogeneous,c_homogeneous,difference
/// F is the homogeneous law and G the heterogeneous one. Returns the files
/// written. Throws std::runtime_error when the directory is not writable.
std::vector<std::filesystem::path> emit_curves(const ExperimentConfig& config,
                                               const std::filesystem::path& out_dir);

}  // namespace orderstats::verify
