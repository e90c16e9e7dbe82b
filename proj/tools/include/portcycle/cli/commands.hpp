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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "portcycle/beamspace.hpp"
#include "portcycle/channel_model.hpp"
#include "portcycle/cli/complexity.hpp"
#include "portcycle/dataset_io.hpp"
#include "portcycle/metrics.hpp"

namespace portcycle::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitIo = 3,
    kExitSchema = 4,
};

/// Array, channel and codebook settings shared by the simulation commands.
/// Defaults reproduce the reference deployment: 8x8 dual-polarized array
/// (128 ports), 4 UE antennas, rho = 2 x 2, 20 ms CSI-RS period.
struct SimulationConfig {
    AntennaConfig antenna;
    ScenarioConfig scenario;
    int rho_x = 2;
    int rho_y = 2;
    int num_beams = 4;
    int n_psk = 8;

    /// Throws ConfigError; runs before any output is produced.
    void validate() const;
};

struct GenerateOptions {
    SimulationConfig sim;
    std::size_t samples = 100;
    std::vector<double> snr_list{0.0};
    std::string perm_policy = "identity";
    std::uint64_t seed = 1;
    std::filesystem::path out;
    int threads = 0;
};

struct EvaluateOptions {
    std::filesystem::path dataset;
    std::optional<std::filesystem::path> predictions;
    int threads = 0;
};

struct EvaluationRow {
    std::string source;
    SummaryRow summary;
};

struct VariationOptions {
    SimulationConfig sim;
    std::size_t samples = 100;
    std::vector<double> snr_list{0.0};
    std::string quantity = "beamset";
    std::string mode = "index-diff";
    bool static_channel = false;
    std::uint64_t seed = 1;
    int threads = 0;
};

struct VariationRow {
    double snr_db = 0.0;
    std::size_t samples = 0;
    double mean = 0.0;
    double std = 0.0;
};

struct BenchOptions {
    std::vector<int> sizes{64, 128, 256, 512};
    int rho = 4;
    int latent_dim = 32;
    double min_seconds = 0.5;
    std::uint64_t seed = 1;
};

/// Sounding order of sample `index` under a permutation policy
/// (identity, all, random).
std::vector<int> sounding_order(const std::string& policy, int rho, std::size_t index, std::size_t n_snr,
                                std::uint64_t sample_seed);

DatasetManifest cmd_generate(const GenerateOptions& opts);

/// Sources: baseline-full (noisy instantaneous full-port CSI), baseline-cycled
/// (reassembled port-cycled measurements) and, with predictions, predicted.
std::vector<EvaluationRow> cmd_evaluate(const EvaluateOptions& opts, std::ostream& warnings);

std::vector<VariationRow> cmd_variation(const VariationOptions& opts);

std::vector<ScalingPoint> cmd_bench(const BenchOptions& opts);

/// Writes the dataset's ground-truth labels as a prediction file.
void cmd_export_labels(const std::filesystem::path& dataset, const std::filesystem::path& out);

std::string evaluation_csv(const std::vector<EvaluationRow>& rows);
std::string variation_csv(const std::vector<VariationRow>& rows);
std::string bench_csv(const std::vector<ScalingPoint>& points);

/// Parses arguments (program name excluded), runs the subcommand and maps
/// errors onto ExitCode values.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace portcycle::cli
