#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orderstats/distribution.hpp"
#include "orderstats/stochastic_orders.hpp"

namespace orderstats::verify {

using Json = nlohmann::ordered_json;

/// Schema violation in an experiment config. `path` locates the offending
/// field, e.g. "checks[2]" or "baseline.shape".
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string path, const std::string& message)
        : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Checks a config may request, in report order.
inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {"st",  "disp", "star", "si",         "pqd",
                                                   "tau", "corr", "phr",  "copula-free"};
    return names;
}

/// A named parametric law: exponential {rate}, weibull {shape, scale} or
/// uniform {lower, upper}.
struct DistributionSpec {
    std::string name;
    std::map<std::string, double> parameters;

    [[nodiscard]] DistPtr build() const;
    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

struct Tolerances {
    double exact = kExactTolerance;  // st, disp, star
    double si = kSiTolerance;        // si, phr
    std::optional<double> tau;       // default: U-statistic Hoeffding radius at 1%
    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct ExperimentConfig {
    std::vector<double> rates;
    std::size_t i = 1;
    std::size_t j = 0;  // 0 until parsed; defaults to n
    std::vector<std::string> checks;
    GridSpec grid;
    std::size_t monte_carlo_m = 100'000;
    std::uint64_t master_seed = 0;
    std::optional<DistributionSpec> baseline;
    std::vector<DistributionSpec> parents;
    Tolerances tolerance;

    [[nodiscard]] bool requests(const std::string& check) const;
    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates a config document. Unknown keys are rejected.
[[nodiscard]] ExperimentConfig parse_config(const Json& document);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Normalized form with every default filled in; parse_config(to_json(c)) == c.
[[nodiscard]] Json to_json(const ExperimentConfig& config);

/// Command-line overrides of config fields.
struct Overrides {
    std::optional<int> grid;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
};

/// Applies overrides and revalidates. --tolerance replaces both the exact
/// and the SI tolerance.
[[nodiscard]] ExperimentConfig apply_overrides(ExperimentConfig config, const Overrides& overrides);

}  // namespace orderstats::verify
