#include <benchmark/benchmark.h>

#include <cmath>

#include "motm/black_scholes.hpp"
#include "motm/expansion.hpp"
#include "motm/heston.hpp"
#include "motm/monte_carlo.hpp"

using namespace motm;

namespace {
const HestonParams kHeston(0.0654, 0.0707, 0.6067, 0.2928, -0.7571);
}

static void BM_BsCall(benchmark::State& state) {
    const auto q = OptionQuery::from_strike(1.0, 1.1, 0.5);
    const BSParams p(0.2);
    for (auto _ : state) benchmark::DoNotOptimize(bs_call(q, p));
}
BENCHMARK(BM_BsCall);

static void BM_BsLogCallDeepTail(benchmark::State& state) {
    const auto q = OptionQuery::from_log_moneyness(1.0, 1e-4);
    const BSParams p(0.2);
    for (auto _ : state) benchmark::DoNotOptimize(bs_log_call(q, p));
}
BENCHMARK(BM_BsLogCallDeepTail);

static void BM_BsImpliedVol(benchmark::State& state) {
    const auto q = OptionQuery::from_strike(1.0, 1.1, 0.5);
    const double price = bs_call(q, BSParams(0.27));
    for (auto _ : state) benchmark::DoNotOptimize(bs_implied_vol(q, price));
}
BENCHMARK(BM_BsImpliedVol);

static void BM_HestonCall(benchmark::State& state) {
    const double t = std::pow(10.0, -static_cast<double>(state.range(0)));
    const double k = 0.4 * std::pow(t, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(heston_log_call(kHeston, k, t));
}
BENCHMARK(BM_HestonCall)->DenseRange(0, 3);

static void BM_HestonEnergy(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(heston_energy(kHeston, 0.2));
}
BENCHMARK(BM_HestonEnergy);

static void BM_RefinedExpansion(benchmark::State& state) {
    const auto e = heston_energy_derivs(kHeston);
    const MOTMSchedule s(0.4, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(log_price_refined(e, s, 1e-3).log_price);
}
BENCHMARK(BM_RefinedExpansion);

static void BM_MonteCarloHeston(benchmark::State& state) {
    MCConfig c;
    c.paths = 20000;
    c.steps = 400;
    const auto q = OptionQuery::from_strike(1.0, 1.0, 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(mc_price(kHeston, q, c).value);
    state.SetItemsProcessed(state.iterations() * c.paths);
}
BENCHMARK(BM_MonteCarloHeston)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
