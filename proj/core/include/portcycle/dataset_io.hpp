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

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "portcycle/beamspace.hpp"
#include "portcycle/channel_model.hpp"
#include "portcycle/port_cycling.hpp"
#include "portcycle/typeii_codebook.hpp"

namespace portcycle {

// On-disk layout of a dataset directory:
//
//   manifest.json  configuration, per-sample metadata, byte layout
//   payload.bin    float32 LE, [sample][cycle][x][y][rx][subcarrier][pol][re,im]
//   labels.bin     int32 LE records: beamset, beam_indices[L], amp_levels[2L],
//                  phase_levels[2L], strongest
//
// The manifest is written last and doubles as the commit marker.

inline constexpr int kDatasetFormatVersion = 1;
inline constexpr int kPredictionFormatVersion = 1;
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kPayloadFile = "payload.bin";
inline constexpr const char* kLabelsFile = "labels.bin";

struct SplitRatios {
    double train = 0.7;
    double validation = 0.2;
    double test = 0.1;
};

struct DatasetHeader {
    AntennaConfig antenna;
    ScenarioConfig scenario;
    int rho_x = 2;
    int rho_y = 2;
    int num_beams = 4;
    int n_psk = 8;
    std::vector<double> snr_list;
    std::uint64_t base_seed = 0;
    std::string perm_policy = "identity";
    /// Labels describe the channel at (first occasion + this offset).
    double label_time_offset_s = 0.0;
    SplitRatios split;
    std::uint64_t split_seed = 0;
};

struct SampleRecord {
    std::uint64_t id = 0;
    double snr_db = 0.0;
    std::uint64_t seed = 0;
    std::vector<int> panel_order;
    std::vector<double> times_s;
};

struct DatasetManifest {
    int format_version = kDatasetFormatVersion;
    DatasetHeader header;
    std::vector<SampleRecord> samples;
    int rho = 0;
    int panel_n_x = 0;
    int panel_n_y = 0;
    int n_rx = 0;
    int n_subcarriers = 0;

    /// [sample, cycle, x, y, rx, subcarrier, pol, re/im]
    std::array<std::uint64_t, 8> payload_shape() const;
    std::uint64_t cycle_floats() const;
    std::uint64_t sample_stride_bytes() const { return cycle_floats() * rho * sizeof(float); }
    std::uint64_t payload_bytes() const { return sample_stride_bytes() * samples.size(); }
    int label_record_ints() const { return 2 + 5 * header.num_beams; }
    std::uint64_t labels_bytes() const {
        return static_cast<std::uint64_t>(label_record_ints()) * sizeof(std::int32_t) * samples.size();
    }
};

struct DatasetSample {
    std::vector<CycleMeasurement> cycles;
    TypeIIReport label;
    double snr_db = 0.0;
    std::uint64_t seed = 0;
};

/// Appends samples to temporary files in a dataset directory; commit()
/// writes the manifest and renames everything into place. Without commit
/// the destructor removes the temporaries.
class DatasetWriter {
public:
    DatasetWriter(std::filesystem::path dir, DatasetHeader header);
    ~DatasetWriter();
    DatasetWriter(const DatasetWriter&) = delete;
    DatasetWriter& operator=(const DatasetWriter&) = delete;

    void append(const DatasetSample& sample);
    DatasetManifest commit();

private:
    std::filesystem::path dir_;
    DatasetManifest manifest_;
    std::ofstream payload_;
    std::ofstream labels_;
    bool committed_ = false;
};

DatasetManifest export_dataset(const std::filesystem::path& dir, const DatasetHeader& header,
                               std::span<const DatasetSample> samples);

DatasetManifest read_manifest(const std::filesystem::path& dir);

struct Dataset {
    DatasetManifest manifest;
    std::vector<DatasetSample> samples;
};

/// Loads tensors (widened from float32) and labels, checking file sizes
/// against the manifest.
Dataset import_dataset(const std::filesystem::path& dir);

/// Reads the cycles of a single sample without loading the whole payload.
std::vector<CycleMeasurement> read_sample_cycles(const std::filesystem::path& dir, const DatasetManifest& manifest,
                                                 std::size_t index);

std::vector<TypeIIReport> read_labels(const std::filesystem::path& dir, const DatasetManifest& manifest);

struct PredictionImport {
    /// Indexed by manifest order; empty where the file has no entry.
    std::vector<std::optional<TypeIIReport>> reports;
    std::size_t missing = 0;
    bool partial() const { return missing > 0; }
};

/// Throws ValidationError naming the sample and field on schema violations.
PredictionImport import_predictions(const std::filesystem::path& path, const DatasetManifest& manifest);

void write_predictions(const std::filesystem::path& path, const DatasetManifest& manifest,
                       std::span<const std::uint64_t> ids, std::span<const TypeIIReport> reports);

/// Writes `contents` to a sibling temporary and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace portcycle
