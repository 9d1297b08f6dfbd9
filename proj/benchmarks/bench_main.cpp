#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "orderstats/concordance.hpp"
#include "orderstats/distribution.hpp"
#include "orderstats/order_statistics.hpp"
#include "orderstats/random.hpp"
#include "orderstats/stochastic_orders.hpp"

using namespace orderstats;

namespace {

RateVector ramp(std::size_t n) {
    std::vector<double> rates(n);
    std::iota(rates.begin(), rates.end(), 1.0);
    return RateVector(std::move(rates));
}

void BM_HypoexponentialCdf(benchmark::State& state) {
    std::vector<double> rates(static_cast<std::size_t>(state.range(0)));
    for (std::size_t k = 0; k < rates.size(); ++k) {
        rates[k] = 1.0 + 0.01 * static_cast<double>(k);  // near-equal rates force uniformization
    }
    const Hypoexponential law(rates);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(law.cdf(t));
        t = t < 20.0 ? t + 0.37 : 0.1;
    }
}
BENCHMARK(BM_HypoexponentialCdf)->Arg(2)->Arg(8)->Arg(32);

void BM_SpacingLaw(benchmark::State& state) {
    const RateVector rv = ramp(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spacing_law(rv, 1, 4));
    }
}
BENCHMARK(BM_SpacingLaw)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

void BM_CheckMoreSi(benchmark::State& state) {
    const RateVector rv({0.5, 1.0, 2.0, 8.0});
    const RateVector hom = rv.homogenized();
    const ShiftFamily het_family = conditional_family(rv, 3);
    const ShiftFamily hom_family = conditional_family(hom, 3);
    const GridSpec grid{static_cast<int>(state.range(0)), 20};
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_more_si(het_family, *min_law(rv), hom_family, *min_law(hom), grid));
    }
}
BENCHMARK(BM_CheckMoreSi)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_EmpiricalTau(benchmark::State& state) {
    SampleStream stream(1, 0);
    const auto pairs = sample_order_pair(ramp(3), 1, 3, stream, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(empirical_tau(pairs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalTau)->Arg(10'000)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
