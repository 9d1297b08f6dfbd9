#include "orderstats_verify/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>

#include "orderstats/concordance.hpp"
#include "orderstats/errors.hpp"

namespace orderstats::verify {

namespace {

std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

std::string index_path(const std::string& parent, std::size_t k) {
    return parent + "[" + std::to_string(k) + "]";
}

void require_object(const Json& node, const std::string& path) {
    if (!node.is_object()) {
        throw ConfigError(path.empty() ? "config" : path, "expected an object");
    }
}

void reject_unknown(const Json& node, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : node.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        if (!known) {
            throw ConfigError(join(path, key), "unknown key");
        }
    }
}

double real_field(const Json& node, const std::string& path) {
    if (!node.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    const double x = node.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(path, "must be finite");
    }
    return x;
}

std::uint64_t unsigned_field(const Json& node, const std::string& path) {
    const bool integral = node.is_number_unsigned() || (node.is_number_integer() && node.get<std::int64_t>() >= 0);
    if (!integral) {
        throw ConfigError(path, "expected a nonnegative integer");
    }
    return node.get<std::uint64_t>();
}

DistributionSpec parse_distribution(const Json& node, const std::string& path) {
    require_object(node, path);
    if (!node.contains("name") || !node["name"].is_string()) {
        throw ConfigError(join(path, "name"), "required string");
    }
    DistributionSpec spec;
    spec.name = node["name"].get<std::string>();
    auto param = [&](const char* key, std::optional<double> fallback) {
        if (node.contains(key)) {
            spec.parameters[key] = real_field(node[key], join(path, key));
        } else if (fallback) {
            spec.parameters[key] = *fallback;
        } else {
            throw ConfigError(join(path, key), "required for " + spec.name);
        }
    };
    if (spec.name == "exponential") {
        reject_unknown(node, path, {"name", "rate"});
        param("rate", 1.0);
    } else if (spec.name == "weibull") {
        reject_unknown(node, path, {"name", "shape", "scale"});
        param("shape", std::nullopt);
        param("scale", 1.0);
    } else if (spec.name == "uniform") {
        reject_unknown(node, path, {"name", "lower", "upper"});
        param("lower", 0.0);
        param("upper", 1.0);
    } else {
        throw ConfigError(join(path, "name"), "unknown distribution '" + spec.name +
                                                  "' (expected exponential, weibull or uniform)");
    }
    try {
        (void)spec.build();
    } catch (const InvalidParameter& e) {
        throw ConfigError(path, e.what());
    }
    return spec;
}

Json distribution_json(const DistributionSpec& spec) {
    Json out = Json::object();
    out["name"] = spec.name;
    for (const auto& [key, value] : spec.parameters) {
        out[key] = value;
    }
    return out;
}

int resolution_field(const Json& node, const std::string& path) {
    const std::uint64_t r = unsigned_field(node, path);
    if (r < 2 || r > 100'000) {
        throw ConfigError(path, "resolution must lie in [2, 100000]");
    }
    return static_cast<int>(r);
}

}  // namespace

DistPtr DistributionSpec::build() const {
    auto at = [&](const char* key) { return parameters.at(key); };
    if (name == "exponential") {
        return std::make_shared<const Exponential>(at("rate"));
    }
    if (name == "weibull") {
        return std::make_shared<const Weibull>(at("shape"), at("scale"));
    }
    if (name == "uniform") {
        return std::make_shared<const Uniform>(at("lower"), at("upper"));
    }
    throw InvalidParameter("unknown distribution '" + name + "'");
}

bool ExperimentConfig::requests(const std::string& check) const {
    return std::find(checks.begin(), checks.end(), check) != checks.end();
}

ExperimentConfig parse_config(const Json& document) {
    require_object(document, "");
    reject_unknown(document, "", {"rates", "i", "j", "checks", "grid", "monte_carlo_m", "master_seed",
                                  "baseline", "parents", "tolerance"});
    ExperimentConfig config;

    if (!document.contains("rates") || !document["rates"].is_array()) {
        throw ConfigError("rates", "required array of positive numbers");
    }
    const Json& rates = document["rates"];
    if (rates.size() < 2) {
        throw ConfigError("rates", "need at least two rates");
    }
    for (std::size_t k = 0; k < rates.size(); ++k) {
        const double r = real_field(rates[k], index_path("rates", k));
        if (!(r > 0.0)) {
            throw ConfigError(index_path("rates", k), "rate must be positive");
        }
        config.rates.push_back(r);
    }
    const std::size_t n = config.rates.size();

    if (!document.contains("checks") || !document["checks"].is_array() || document["checks"].empty()) {
        throw ConfigError("checks", "required nonempty array");
    }
    std::set<std::string> seen;
    const Json& checks = document["checks"];
    for (std::size_t k = 0; k < checks.size(); ++k) {
        const std::string path = index_path("checks", k);
        if (!checks[k].is_string()) {
            throw ConfigError(path, "expected a string");
        }
        const std::string name = checks[k].get<std::string>();
        const auto& known = known_checks();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            throw ConfigError(path, "unknown check '" + name + "'");
        }
        if (!seen.insert(name).second) {
            throw ConfigError(path, "duplicate check '" + name + "'");
        }
        config.checks.push_back(name);
    }

    if (!document.contains("master_seed")) {
        throw ConfigError("master_seed", "required (no default seed)");
    }
    config.master_seed = unsigned_field(document["master_seed"], "master_seed");

    config.i = document.contains("i") ? unsigned_field(document["i"], "i") : 1;
    config.j = document.contains("j") ? unsigned_field(document["j"], "j") : n;
    if (config.i < 1 || config.i >= config.j || config.j > n) {
        throw ConfigError(document.contains("j") ? "j" : "i",
                          "need 1 <= i < j <= n (i=" + std::to_string(config.i) + ", j=" +
                              std::to_string(config.j) + ", n=" + std::to_string(n) + ")");
    }

    if (document.contains("grid")) {
        const Json& grid = document["grid"];
        if (grid.is_number()) {
            config.grid.u_resolution = resolution_field(grid, "grid");
        } else {
            require_object(grid, "grid");
            reject_unknown(grid, "grid", {"u_resolution", "si_resolution"});
            if (grid.contains("u_resolution")) {
                config.grid.u_resolution = resolution_field(grid["u_resolution"], "grid.u_resolution");
            }
            if (grid.contains("si_resolution")) {
                config.grid.si_resolution = resolution_field(grid["si_resolution"], "grid.si_resolution");
            }
        }
    }

    if (document.contains("monte_carlo_m")) {
        config.monte_carlo_m = unsigned_field(document["monte_carlo_m"], "monte_carlo_m");
    }
    if (config.monte_carlo_m < 100) {
        throw ConfigError("monte_carlo_m", "must be at least 100");
    }
    if (config.requests("copula-free") && config.monte_carlo_m < kMinCopulaFreeSamples) {
        throw ConfigError("monte_carlo_m", "copula-free needs at least 10000 samples");
    }

    if (document.contains("baseline")) {
        config.baseline = parse_distribution(document["baseline"], "baseline");
    } else if (config.requests("phr")) {
        throw ConfigError("baseline", "required when checks include phr");
    }

    if (document.contains("parents")) {
        const Json& parents = document["parents"];
        if (!parents.is_array() || parents.size() != 2) {
            throw ConfigError("parents", "expected an array of two distributions");
        }
        for (std::size_t k = 0; k < 2; ++k) {
            config.parents.push_back(parse_distribution(parents[k], index_path("parents", k)));
        }
    } else {
        config.parents = {DistributionSpec{"exponential", {{"rate", 1.0}}},
                          DistributionSpec{"uniform", {{"lower", 0.0}, {"upper", 1.0}}}};
    }

    if (document.contains("tolerance")) {
        const Json& tol = document["tolerance"];
        require_object(tol, "tolerance");
        reject_unknown(tol, "tolerance", {"exact", "si", "tau"});
        auto nonnegative = [&](const char* key) {
            const double t = real_field(tol[key], join("tolerance", key));
            if (t < 0.0) {
                throw ConfigError(join("tolerance", key), "must be nonnegative");
            }
            return t;
        };
        if (tol.contains("exact")) {
            config.tolerance.exact = nonnegative("exact");
        }
        if (tol.contains("si")) {
            config.tolerance.si = nonnegative("si");
        }
        if (tol.contains("tau")) {
            config.tolerance.tau = nonnegative("tau");
        }
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open " + path.string());
    }
    Json document;
    try {
        document = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(document);
}

Json to_json(const ExperimentConfig& config) {
    Json out = Json::object();
    out["rates"] = config.rates;
    out["i"] = config.i;
    out["j"] = config.j;
    out["checks"] = config.checks;
    out["grid"] = {{"u_resolution", config.grid.u_resolution}, {"si_resolution", config.grid.si_resolution}};
    out["monte_carlo_m"] = config.monte_carlo_m;
    out["master_seed"] = config.master_seed;
    if (config.baseline) {
        out["baseline"] = distribution_json(*config.baseline);
    }
    out["parents"] = Json::array();
    for (const auto& parent : config.parents) {
        out["parents"].push_back(distribution_json(parent));
    }
    out["tolerance"] = {{"exact", config.tolerance.exact}, {"si", config.tolerance.si}};
    if (config.tolerance.tau) {
        out["tolerance"]["tau"] = *config.tolerance.tau;
    }
    return out;
}

ExperimentConfig apply_overrides(ExperimentConfig config, const Overrides& overrides) {
    if (overrides.grid) {
        config.grid.u_resolution = *overrides.grid;
    }
    if (overrides.samples) {
        config.monte_carlo_m = *overrides.samples;
    }
    if (overrides.seed) {
        config.master_seed = *overrides.seed;
    }
    if (overrides.tolerance) {
        config.tolerance.exact = *overrides.tolerance;
        config.tolerance.si = *overrides.tolerance;
    }
    return parse_config(to_json(config));
}

}  // namespace orderstats::verify
