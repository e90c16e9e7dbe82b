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

#include <cstddef>
#include <utility>
#include <vector>

#include "portcycle/types.hpp"

namespace portcycle {

/// Dual-polarized uniform planar array with an oversampled 2D-DFT codebook.
///
/// Element layout is horizontal-major: element (p, q) with p < n_x and
/// q < n_y lives at index p * n_y + q. Port index of polarization `pol` is
/// pol * n_x * n_y + element index.
struct AntennaConfig {
    int n_x = 8;
    int n_y = 8;
    int n_pol = 2;
    int o1 = 4;
    int o2 = 4;

    int n_elements() const { return n_x * n_y; }
    int n_t() const { return n_pol * n_x * n_y; }
    int n_beamsets() const { return o1 * o2; }

    /// Throws ConfigError on any violated invariant.
    void validate() const;

    bool operator==(const AntennaConfig&) const = default;
};

/// Kronecker product v_l (x) u_m of horizontal and vertical DFT columns.
/// Entries have unit magnitude; no normalization is applied.
CVector steering_beam(int l, int m, const AntennaConfig& cfg);

/// Same formula as steering_beam evaluated at fractional spatial
/// frequencies f_h in [0, o1*n_x) and f_v in [0, o2*n_y).
CVector steering_vector(double f_h, double f_v, const AntennaConfig& cfg);

/// Orthogonal beam group with offsets (q1, q2). Column n1 * n_y + n2 holds
/// steering_beam(o1 * n1 + q1, o2 * n2 + q2).
CMatrix build_beamset(int q1, int q2, const AntennaConfig& cfg);

class BeamspaceGrid {
public:
    explicit BeamspaceGrid(const AntennaConfig& cfg);

    const AntennaConfig& config() const { return cfg_; }
    int size() const { return static_cast<int>(beamsets_.size()); }
    int beams_per_set() const { return cfg_.n_elements(); }

    /// Beamset b = q1 * o2 + q2.
    const CMatrix& beamset(int b) const;
    auto beam(int b, int i) const { return beamset(b).col(i); }

    int flat_index(int q1, int q2) const;
    std::pair<int, int> offsets(int b) const;

    /// Grid indices (l, m) of beam i in beamset b.
    std::pair<int, int> grid_indices(int b, int i) const;

private:
    AntennaConfig cfg_;
    std::vector<CMatrix> beamsets_;
};

inline BeamspaceGrid enumerate_beamsets(const AntennaConfig& cfg) { return BeamspaceGrid(cfg); }

}  // namespace portcycle
