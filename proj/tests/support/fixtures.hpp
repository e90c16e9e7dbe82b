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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <unistd.h>

#include "portcycle/dataset_io.hpp"
#include "portcycle/port_cycling.hpp"
#include "portcycle/seeding.hpp"
#include "portcycle/typeii_codebook.hpp"

namespace portcycle::testing {

/// Fresh directory under the system temp path, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("portcycle-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Small dataset header: 4x2 array, rho = 2 x 1, L = 2, 4 tones, 2 UE antennas.
inline DatasetHeader small_header() {
    DatasetHeader h;
    h.antenna.n_x = 4;
    h.antenna.n_y = 2;
    h.scenario.n_subcarriers = 4;
    h.scenario.n_rx = 2;
    h.rho_x = 2;
    h.rho_y = 1;
    h.num_beams = 2;
    h.n_psk = 8;
    h.snr_list = {0.0};
    h.base_seed = 11;
    h.label_time_offset_s = h.scenario.csi_period_s;
    return h;
}

inline std::vector<DatasetSample> make_samples(const DatasetHeader& h, std::size_t n) {
    const SubPanelPartition part = partition(h.antenna, h.rho_x, h.rho_y);
    const BeamspaceGrid grid(h.antenna);
    const auto tables = QuantizationTables::standard(h.n_psk);
    std::vector<int> perm(static_cast<std::size_t>(part.rho()));
    for (int i = 0; i < part.rho(); ++i) {
        perm[static_cast<std::size_t>(i)] = part.rho() - 1 - i;
    }
    std::vector<DatasetSample> out;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t seed = derive_seed(h.base_seed, i);
        const ChannelRealization real = generate_channel(h.scenario, h.antenna, seed);
        DatasetSample s;
        s.seed = seed;
        s.snr_db = h.snr_list[i % h.snr_list.size()];
        s.cycles = sound_cycle(real, make_schedule(part, 0.0, h.scenario.csi_period_s, perm), part, s.snr_db, seed);
        s.label = ground_truth_report(wideband_covariance(snapshot_at(real, h.label_time_offset_s)), grid, tables,
                                      h.num_beams);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace portcycle::testing
