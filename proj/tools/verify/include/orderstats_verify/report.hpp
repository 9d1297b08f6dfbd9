#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orderstats/verdict.hpp"
#include "orderstats_verify/config.hpp"

namespace orderstats::verify {

/// Outcome of one requested check. Order checks carry verdicts; numeric
/// checks (tau, corr) carry their values. A numerical failure inside the
/// check is recorded in `error` and makes the check fail.
struct CheckResult {
    std::string name;
    bool holds = false;
    std::vector<OrderVerdict> verdicts;
    Json values = Json::object();
    std::string error;

    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Field names:
///   provenance  {tool, version, config, master_seed, grid, monte_carlo_m}
///   checks      [{name, holds, verdicts: [...], values: {...}, error?}]
///   all_hold, first_failure (null when all hold)
///   timing      {total_seconds, checks: {name: seconds}}
/// Everything except `timing` is a deterministic function of the config.
struct Report {
    Json provenance = Json::object();
    std::vector<CheckResult> checks;
    std::map<std::string, double> check_seconds;
    double total_seconds = 0.0;

    [[nodiscard]] bool all_hold() const;
    [[nodiscard]] std::optional<std::string> first_failure() const;

    friend bool operator==(const Report&, const Report&) = default;
};

[[nodiscard]] Json to_json(const OrderVerdict& verdict);
[[nodiscard]] OrderVerdict verdict_from_json(const Json& node);
[[nodiscard]] Json to_json(const Report& report);
[[nodiscard]] Report report_from_json(const Json& node);

/// The report without its timing block, for reproducibility comparisons.
[[nodiscard]] Json without_timing(const Json& report);

}  // namespace orderstats::verify
