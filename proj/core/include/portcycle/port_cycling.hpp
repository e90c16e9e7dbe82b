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
#include <span>
#include <vector>

#include "portcycle/beamspace.hpp"
#include "portcycle/channel_model.hpp"
#include "portcycle/types.hpp"

namespace portcycle {

/// Split of the planar array into rho_x * rho_y contiguous rectangular
/// sub-panels. Panels are numbered row-major (panel = px * rho_y + py).
struct SubPanelPartition {
    int rho_x = 1;
    int rho_y = 1;
    AntennaConfig full;
    /// Geometry of a single panel; oversampling is inherited from the full array.
    AntennaConfig panel;
    /// ports[panel][j] is the full-array port of panel-local port j, where
    /// j follows the same pol-major, horizontal-major layout as a full array
    /// of the panel's size.
    std::vector<std::vector<int>> ports;

    int rho() const { return rho_x * rho_y; }
};

SubPanelPartition partition(const AntennaConfig& cfg, int rho_x, int rho_y);

/// One sub-panel's measured channel, indexed [x][y][rx][subcarrier][pol].
struct CycleMeasurement {
    int panel_id = 0;
    double time_s = 0.0;
    int n_x = 0;
    int n_y = 0;
    int n_rx = 0;
    int n_subcarriers = 0;
    std::vector<cdouble> tensor;

    static constexpr int kPolarizations = 2;

    std::size_t offset(int x, int y, int rx, int k, int pol) const {
        return ((((static_cast<std::size_t>(x) * n_y + y) * n_rx + rx) * n_subcarriers + k) * kPolarizations) + pol;
    }
    cdouble& at(int x, int y, int rx, int k, int pol) { return tensor[offset(x, y, rx, k, pol)]; }
    const cdouble& at(int x, int y, int rx, int k, int pol) const { return tensor[offset(x, y, rx, k, pol)]; }

    /// Per-subcarrier n_rx x n'_t matrices in panel-local port order.
    std::vector<CMatrix> channel_matrices() const;
};

CycleMeasurement extract_subpanel(const ChannelSnapshot& s, const SubPanelPartition& part, int panel_id);

/// Scatters panel measurements back into full-array channel matrices. Every
/// panel must be present exactly once; each block keeps its own time stamp,
/// so the result is a stale full-port estimate when the channel moves.
ChannelSnapshot reassemble(std::span<const CycleMeasurement> measurements, const SubPanelPartition& part);

struct CycleOccasion {
    int index = 0;
    double time_s = 0.0;
    int panel_id = 0;
};

struct CycleSchedule {
    std::vector<CycleOccasion> occasions;
};

CycleSchedule make_schedule(const SubPanelPartition& part, double t0, double t_csi, std::span<const int> perm);

/// Snapshot, noise and panel selection for each occasion. Occasion i uses
/// noise seed derive_seed(seed, i).
std::vector<CycleMeasurement> sound_cycle(const ChannelRealization& real, const CycleSchedule& sched,
                                          const SubPanelPartition& part, double snr_db, std::uint64_t seed);

struct CycleQuantity {
    int beamset = 0;
    int dominant_beam = 0;
};

/// Beam selection on the panel's own covariance and grid.
CycleQuantity per_cycle_quantity(const CycleMeasurement& m, const BeamspaceGrid& panel_grid, int num_beams);

enum class VariationMode {
    kIndexDifference,
    kChangeIndicator,
};

/// Mean absolute successive difference, (1/(rho-1)) sum |M[i+1] - M[i]|.
double variation_score(std::span<const double> values);

/// Fraction of successive pairs that differ.
double change_indicator_score(std::span<const double> values);

double variation_score(std::span<const double> values, VariationMode mode);

}  // namespace portcycle
