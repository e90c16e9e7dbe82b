// SPDX-License-Identifier: Apache-2.0
//
// portcycle: port-cycled CSI acquisition and Type-II precoder simulation
// Copyright (C) 2026 The portcycle authors
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

#include <random>
#include <vector>

#include "portcycle/channel_model.hpp"
#include "portcycle/cli/complexity.hpp"
#include "portcycle/linalg.hpp"
#include "portcycle/port_cycling.hpp"
#include "portcycle/typeii_codebook.hpp"

using namespace portcycle;

namespace {

void BM_FullEvd(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CMatrix r = cli::random_covariance(n, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dominant_eigenpair(r).value);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_FullEvd)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed)->Unit(benchmark::kMillisecond);

// The aggregator cost does not depend on N_t; the argument only labels the
// point so it lines up with BM_FullEvd.
void BM_SubpanelAggregator(benchmark::State& state) {
    constexpr int kRho = 4;
    constexpr int kLatent = 32;
    const cli::RecurrentAggregator agg(kLatent, 1);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal;
    std::vector<Eigen::VectorXd> latents(kRho, Eigen::VectorXd(kLatent));
    for (auto& z : latents) {
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            z(i) = normal(rng);
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(agg.run(latents)(0));
    }
}
BENCHMARK(BM_SubpanelAggregator)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMicrosecond);

CMatrix default_covariance() {
    return wideband_covariance(snapshot_at(generate_channel(ScenarioConfig{}, AntennaConfig{}, 3), 0.0));
}

void BM_BeamSelection(benchmark::State& state) {
    const BeamspaceGrid grid(AntennaConfig{});
    const CMatrix r = default_covariance();
    const int num_beams = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_beamset_and_indices(r, grid, num_beams).beamset);
    }
}
BENCHMARK(BM_BeamSelection)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

void BM_GroundTruthReport(benchmark::State& state) {
    const BeamspaceGrid grid(AntennaConfig{});
    const auto tables = QuantizationTables::standard(8);
    const CMatrix r = default_covariance();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ground_truth_report(r, grid, tables, 4).beamset);
    }
}
BENCHMARK(BM_GroundTruthReport)->Unit(benchmark::kMillisecond);

void BM_AssemblePrecoder(benchmark::State& state) {
    const BeamspaceGrid grid(AntennaConfig{});
    const auto tables = QuantizationTables::standard(8);
    const TypeIIReport rep = ground_truth_report(default_covariance(), grid, tables, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_precoder(rep, grid, tables).data());
    }
}
BENCHMARK(BM_AssemblePrecoder)->Unit(benchmark::kMicrosecond);

void BM_SoundCycle(benchmark::State& state) {
    const AntennaConfig ant;
    const ScenarioConfig sc;
    const ChannelRealization real = generate_channel(sc, ant, 4);
    const SubPanelPartition part = partition(ant, 2, 2);
    const std::vector<int> perm{0, 1, 2, 3};
    const CycleSchedule sched = make_schedule(part, 0.0, sc.csi_period_s, perm);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sound_cycle(real, sched, part, 10.0, 5).size());
    }
}
BENCHMARK(BM_SoundCycle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
