#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "satnoma/montecarlo.hpp"

using namespace satnoma;

namespace {

NomaScenario standard_scenario(SicMode sic, const char* preset) {
    const double alloc[] = {0.5, 0.4, 0.1};
    const double rates[] = {0.1, 0.5, 1.0};
    std::vector<NomaUser> users;
    for (int i = 0; i < 3; ++i) {
        NomaUser u;
        u.alloc = alloc[i];
        u.rate_bpcu = rates[i];
        u.geometry.angle_deg = 0.1;
        u.fading = ShadowedRicianParams::preset(preset);
        users.push_back(u);
    }
    return NomaScenario::validated(std::move(users), sic, SnrReference::boresight);
}

void BM_CdfGain(benchmark::State& state, const char* preset) {
    const auto params = ShadowedRicianParams::preset(preset);
    const auto dc = derive(params);
    double x = 1e-4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cdf_gain(dc, params.m, x));
        x = x < 4.0 ? x * 1.7 : 1e-4;
    }
}

void BM_SampleGain(benchmark::State& state) {
    const auto params = ShadowedRicianParams::preset("fhs");
    std::mt19937_64 rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(sample_gain(params, rng));
}

void BM_OutagePsicExact(benchmark::State& state) {
    const auto scn = standard_scenario(SicMode::psic(), "fhs");
    for (auto _ : state)
        benchmark::DoNotOptimize(outage_psic_exact(scn, 2, 1000.0).probability);
}

void BM_OutageIpsicExact(benchmark::State& state) {
    const auto scn = standard_scenario(SicMode::ipsic(1e-3), "fhs");
    const int quad_n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(outage_ipsic_exact(scn, 2, 1000.0, quad_n).probability);
}

void BM_SimulateOutage(benchmark::State& state) {
    const auto scn = standard_scenario(SicMode::ipsic(1e-3), "fhs");
    SimConfig sim{100000, 7, static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_outage(scn, 3, 100.0, sim).probability);
    state.SetItemsProcessed(state.iterations() * sim.trials);
}

void BM_GaussLaguerreCached(benchmark::State& state) {
    specfun::gauss_laguerre_rule(64);
    for (auto _ : state) benchmark::DoNotOptimize(&specfun::gauss_laguerre_rule(64));
}

} // namespace

BENCHMARK_CAPTURE(BM_CdfGain, fhs, "fhs");
BENCHMARK_CAPTURE(BM_CdfGain, ils, "ils");
BENCHMARK(BM_SampleGain);
BENCHMARK(BM_OutagePsicExact);
BENCHMARK(BM_OutageIpsicExact)->Arg(32)->Arg(64);
BENCHMARK(BM_SimulateOutage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GaussLaguerreCached);

BENCHMARK_MAIN();
