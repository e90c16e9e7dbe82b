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
#include <limits>
#include <span>
#include <vector>

#include "portcycle/beamspace.hpp"
#include "portcycle/types.hpp"

namespace portcycle {

/// Desk-scale stand-in for an urban-macro line-of-sight link: one dominant
/// LoS ray plus weak scattered rays. Defaults follow the reference
/// deployment (3.5 GHz, 10 MHz, 15 kHz, 30 km/h, 4 UE antennas, 20 ms).
struct ScenarioConfig {
    double carrier_freq_hz = 3.5e9;
    double bandwidth_hz = 10e6;
    double subcarrier_spacing_hz = 15e3;
    /// One simulated tone per resource block (12 subcarriers apart).
    int n_subcarriers = 48;
    double ue_speed_mps = 30.0 / 3.6;
    double csi_period_s = 0.020;
    int n_rx = 4;
    /// Total ray count, LoS included.
    int n_clusters = 5;
    double los_k_factor_db = 13.0;
    /// NLoS excess delays are drawn from (0, max_excess_delay_s].
    double max_excess_delay_s = 1e-6;

    double tone_spacing_hz() const { return 12.0 * subcarrier_spacing_hz; }
    /// Baseband offset of tone k, centred on the carrier.
    double tone_offset_hz(int k) const;
    double max_doppler_hz() const { return ue_speed_mps * carrier_freq_hz / kSpeedOfLight; }

    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

struct RayCluster {
    /// Departure direction as fractional DFT frequencies on the transmit grid.
    double f_h = 0.0;
    double f_v = 0.0;
    /// Complex weights on the two transmit polarizations.
    std::array<cdouble, 2> pol_weights{cdouble{1.0, 0.0}, cdouble{1.0, 0.0}};
    CVector rx_signature;
    cdouble gain{1.0, 0.0};
    double delay_s = 0.0;
    double doppler_hz = 0.0;
};

struct ChannelRealization {
    std::vector<RayCluster> clusters;
    std::uint64_t seed = 0;
    ScenarioConfig scenario;
    AntennaConfig antenna;
};

/// Per-tone channel matrices at one instant; h[k] is n_rx x n_t.
struct ChannelSnapshot {
    double time_s = 0.0;
    std::vector<CMatrix> h;

    int n_subcarriers() const { return static_cast<int>(h.size()); }
    int n_rx() const { return h.empty() ? 0 : static_cast<int>(h.front().rows()); }
    int n_t() const { return h.empty() ? 0 : static_cast<int>(h.front().cols()); }
};

/// Transmit signature of a ray over all n_t ports (polarization blocks stacked).
CVector transmit_signature(const RayCluster& ray, const AntennaConfig& antenna);

ChannelRealization generate_channel(const ScenarioConfig& scenario, const AntennaConfig& antenna,
                                    std::uint64_t seed);

ChannelSnapshot snapshot_at(const ChannelRealization& real, double t);

/// Passing this as snr_db disables noise.
inline constexpr double kNoiselessSnr = std::numeric_limits<double>::infinity();

/// Adds circular complex Gaussian noise with per-entry variance
/// mean(|H|^2) * 10^(-snr_db / 10). The unit-variance draw depends only on the
/// seed, so one seed gives the same noise shape at every SNR.
ChannelSnapshot add_measurement_noise(const ChannelSnapshot& s, double snr_db, std::uint64_t seed);

/// R = (1/K) sum_k H_k^H H_k.
CMatrix wideband_covariance(std::span<const CMatrix> h);
inline CMatrix wideband_covariance(const ChannelSnapshot& s) { return wideband_covariance(s.h); }

}  // namespace portcycle
