// orderstats command-line harness: verify, curves, tau, selftest.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "orderstats/kendall_tau.hpp"
#include "orderstats_verify/config.hpp"
#include "orderstats_verify/experiment.hpp"
#include "orderstats_verify/selftest.hpp"

namespace {

using namespace orderstats::verify;

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
    std::optional<int> grid;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;

    [[nodiscard]] Overrides overrides() const { return {grid, samples, seed, tolerance}; }
};

int run_verify(const GlobalFlags& flags, const std::string& config_path, const std::string& out_path) {
    const ExperimentConfig config = apply_overrides(load_config(config_path), flags.overrides());
    const Report report = run_experiment(config);
    const std::string text = to_json(report).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!(out << text)) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitUsage;
        }
    }
    for (const auto& check : report.checks) {
        std::cerr << (check.holds ? "HOLDS " : "FAILS ") << check.name
                  << (check.error.empty() ? "" : " (" + check.error + ")") << "\n";
    }
    if (const auto failure = report.first_failure()) {
        std::cerr << "first failing check: " << *failure << "\n";
        return kExitFailedCheck;
    }
    return 0;
}

int run_curves(const GlobalFlags& flags, const std::string& config_path, const std::string& out_dir) {
    const ExperimentConfig config = apply_overrides(load_config(config_path), flags.overrides());
    const auto files = emit_curves(config, out_dir);
    if (files.empty()) {
        std::cerr << "no curve-capable checks (disp, star, si, pqd) requested\n";
    }
    for (const auto& f : files) {
        std::cout << f.string() << "\n";
    }
    return 0;
}

int run_tau(std::size_t n, std::optional<std::size_t> i) {
    auto print = [](std::size_t n_, std::size_t i_) {
        std::printf("%zu %zu %.15g\n", n_, i_, orderstats::exact_tau_min_pair(n_, i_));
    };
    if (i) {
        std::printf("%.15g\n", orderstats::exact_tau_min_pair(n, *i));
        return 0;
    }
    std::printf("n i tau\n");
    for (std::size_t k = 2; k <= n; ++k) {
        print(n, k);
    }
    return 0;
}

int print_selftest(const SelftestOptions& options) {
    const SelftestResult result = run_selftest(options);
    for (const auto& line : result.lines) {
        std::cout << line << "\n";
    }
    std::printf("oracle: %zu comparisons, max |difference| %.3e (tolerance %.0e)\n", result.oracle_comparisons,
                result.max_oracle_difference, options.oracle_tolerance);
    std::printf("convolution: %zu comparisons, max |difference| %.3e (tolerance %.0e)\n",
                result.convolution_comparisons, result.max_convolution_difference, options.convolution_tolerance);
    std::printf("%s\n", result.passed ? "selftest passed" : "selftest FAILED");
    return result.passed ? 0 : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact laws and stochastic-order checks for order statistics of heterogeneous exponentials"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    app.add_option("--grid", flags.grid, "u-grid resolution k (points j/k, j = 1..k-1)")->check(CLI::Range(2, 100000));
    app.add_option("--samples", flags.samples, "Monte Carlo sample size")->check(CLI::PositiveNumber);
    app.add_option("--seed", flags.seed, "master seed");
    app.add_option("--tolerance", flags.tolerance, "tolerance for exact-law checks")->check(CLI::NonNegativeNumber);

    std::string config_path;
    std::string out_path;
    auto* verify = app.add_subcommand("verify", "run the checks of a config and print a JSON report");
    verify->add_option("--config", config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    verify->add_option("--out", out_path, "write the report here instead of stdout");

    std::string curves_config;
    std::string curves_out;
    auto* curves = app.add_subcommand("curves", "write CSV curve tables for a config");
    curves->add_option("--config", curves_config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    curves->add_option("--out", curves_out, "output directory")->required();

    std::size_t tau_n = 0;
    std::optional<std::size_t> tau_i;
    auto* tau = app.add_subcommand("tau", "exact Kendall's tau of (min, i-th order statistic) for i.i.d. samples");
    tau->add_option("--n", tau_n, "sample size")->required()->check(CLI::Range(2, 100000));
    tau->add_option("--i", tau_i, "order statistic index; omit for the table over i = 2..n");

    SelftestOptions selftest_options;
    std::optional<std::uint64_t> selftest_seed;
    auto* selftest = app.add_subcommand("selftest", "compare exact laws against the permutation oracle");
    selftest->add_option("--max-n", selftest_options.max_n, "largest sample size")->capture_default_str();
    selftest->add_option("--seed", selftest_seed, "seed for the random rate vectors");
    selftest->add_option("--instances", selftest_options.instances, "number of random rate vectors")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            return run_verify(flags, config_path, out_path);
        }
        if (curves->parsed()) {
            return run_curves(flags, curves_config, curves_out);
        }
        if (tau->parsed()) {
            return run_tau(tau_n, tau_i);
        }
        selftest_seed = selftest_seed ? selftest_seed : flags.seed;
        if (!selftest_seed) {
            std::cerr << "error: selftest needs --seed\n";
            return kExitUsage;
        }
        selftest_options.seed = *selftest_seed;
        return print_selftest(selftest_options);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
