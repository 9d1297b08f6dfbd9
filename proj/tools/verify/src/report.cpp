#include "orderstats_verify/report.hpp"

#include <algorithm>

namespace orderstats::verify {

bool Report::all_hold() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.holds; });
}

std::optional<std::string> Report::first_failure() const {
    for (const auto& c : checks) {
        if (!c.holds) {
            return c.name;
        }
    }
    return std::nullopt;
}

Json to_json(const OrderVerdict& verdict) {
    Json witness = Json::object();
    for (const auto& w : verdict.witness) {
        witness[w.name] = w.value;
    }
    return Json{{"order", verdict.order_name},
                {"holds", verdict.holds},
                {"max_violation", verdict.max_violation},
                {"worst_excess", verdict.worst_excess},
                {"witness", witness},
                {"grid", verdict.grid},
                {"grid_points", verdict.grid_points},
                {"tolerance", verdict.tolerance}};
}

OrderVerdict verdict_from_json(const Json& node) {
    OrderVerdict v;
    v.order_name = node.at("order").get<std::string>();
    v.holds = node.at("holds").get<bool>();
    v.max_violation = node.at("max_violation").get<double>();
    v.worst_excess = node.at("worst_excess").get<double>();
    for (const auto& [name, value] : node.at("witness").items()) {
        v.witness.push_back({name, value.get<double>()});
    }
    v.grid = node.at("grid").get<std::string>();
    v.grid_points = node.at("grid_points").get<std::size_t>();
    v.tolerance = node.at("tolerance").get<double>();
    return v;
}

Json to_json(const Report& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json entry{{"name", c.name}, {"holds", c.holds}, {"verdicts", Json::array()}, {"values", c.values}};
        for (const auto& v : c.verdicts) {
            entry["verdicts"].push_back(to_json(v));
        }
        if (!c.error.empty()) {
            entry["error"] = c.error;
        }
        checks.push_back(std::move(entry));
    }
    Json timing{{"total_seconds", report.total_seconds}, {"checks", Json::object()}};
    for (const auto& [name, seconds] : report.check_seconds) {
        timing["checks"][name] = seconds;
    }
    const auto failure = report.first_failure();
    return Json{{"provenance", report.provenance},
                {"checks", checks},
                {"all_hold", report.all_hold()},
                {"first_failure", failure ? Json(*failure) : Json(nullptr)},
                {"timing", timing}};
}

Report report_from_json(const Json& node) {
    Report report;
    report.provenance = node.at("provenance");
    for (const auto& entry : node.at("checks")) {
        CheckResult c;
        c.name = entry.at("name").get<std::string>();
        c.holds = entry.at("holds").get<bool>();
        for (const auto& v : entry.at("verdicts")) {
            c.verdicts.push_back(verdict_from_json(v));
        }
        c.values = entry.at("values");
        if (entry.contains("error")) {
            c.error = entry["error"].get<std::string>();
        }
        report.checks.push_back(std::move(c));
    }
    const Json& timing = node.at("timing");
    report.total_seconds = timing.at("total_seconds").get<double>();
    for (const auto& [name, seconds] : timing.at("checks").items()) {
        report.check_seconds[name] = seconds.get<double>();
    }
    return report;
}

Json without_timing(const Json& report) {
    Json copy = report;
    copy.erase("timing");
    return copy;
}

}  // namespace orderstats::verify
