// trsim - radiated-exposure and power simulator for cellular handsets
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "trsim/bioheat.hpp"
#include "trsim/channel.hpp"
#include "trsim/exposure.hpp"
#include "trsim/power.hpp"
#include "trsim/scenario.hpp"

namespace {

using namespace trsim;

void BM_SampleChannel(benchmark::State& state) {
    const int taps = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(channel::sample_channel(seed++, taps, 1.0));
}
BENCHMARK(BM_SampleChannel)->Arg(1)->Arg(8)->Arg(64);

void BM_Snapshot(benchmark::State& state) {
    const auto ch = channel::sample_channel(7, static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(channel::snapshot(ch));
}
BENCHMARK(BM_Snapshot)->Arg(8)->Arg(64);

void BM_OptimumPower(benchmark::State& state) {
    const auto apps = power::default_applications();
    double h = 1e-12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(power::total_optimum_power(UeMode::Active, apps, h, 1e-13));
        h *= 1.0000001;
    }
}
BENCHMARK(BM_OptimumPower);

void BM_BioheatStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto grid =
        bioheat::TissueGrid::uniform(n, n, n, 1e-4, 1109.0, 3391.0, 0.37, 9100.0, 1.0);
    bioheat::SolverConfig config;
    config.dt_s = 0.9 * bioheat::stability_limit(grid);
    auto field = bioheat::TemperatureField::zero(grid);
    for (auto _ : state) {
        field = bioheat::step(field, grid, config);
        benchmark::DoNotOptimize(field.u.data());
    }
    state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_BioheatStep)->Arg(16)->Arg(32)->Arg(40);

void BM_PdDepthProfile(benchmark::State& state) {
    const auto skin = exposure::default_skin_layers();
    for (auto _ : state)
        benchmark::DoNotOptimize(exposure::pd_depth_profile(skin, 0.5, 30e9, 0.0, 0.02));
}
BENCHMARK(BM_PdDepthProfile);

void BM_RunScenario(benchmark::State& state) {
    cfg::ScenarioConfig config;
    config.n_users = static_cast<int>(state.range(0));
    config.tr_users = config.n_users * 2 / 5;
    config.iterations = 10;
    config.exposure.profile_step_mm = 0.1;
    config.bioheat.spacing_m = 5e-4;
    config.bioheat.total_time_s = 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(scenario::run_scenario(config));
}
BENCHMARK(BM_RunScenario)->Arg(10)->Arg(50);

} // namespace

BENCHMARK_MAIN();
