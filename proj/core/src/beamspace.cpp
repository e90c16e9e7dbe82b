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

#include "portcycle/beamspace.hpp"

#include <cmath>
#include <string>

#include "portcycle/errors.hpp"

namespace portcycle {

namespace {

cdouble dft_phase(double index, int p, int period) {
    const double angle = kTwoPi * index * static_cast<double>(p) / static_cast<double>(period);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

void AntennaConfig::validate() const {
    if (n_x < 1 || n_y < 1) {
        throw ConfigError("antenna: n_x and n_y must be >= 1 (got " + std::to_string(n_x) + "x" +
                          std::to_string(n_y) + ")");
    }
    if (n_pol != 2) {
        throw ConfigError("antenna: n_pol must be 2 (dual-polarized array)");
    }
    if (o1 < 1 || o2 < 1) {
        throw ConfigError("antenna: oversampling factors must be >= 1");
    }
}

CVector steering_beam(int l, int m, const AntennaConfig& cfg) {
    cfg.validate();
    if (l < 0 || l >= cfg.o1 * cfg.n_x || m < 0 || m >= cfg.o2 * cfg.n_y) {
        throw DomainError("steering_beam: grid index (" + std::to_string(l) + ", " + std::to_string(m) +
                          ") outside [0, " + std::to_string(cfg.o1 * cfg.n_x) + ") x [0, " +
                          std::to_string(cfg.o2 * cfg.n_y) + ")");
    }
    return steering_vector(static_cast<double>(l), static_cast<double>(m), cfg);
}

CVector steering_vector(double f_h, double f_v, const AntennaConfig& cfg) {
    const int period_h = cfg.o1 * cfg.n_x;
    const int period_v = cfg.o2 * cfg.n_y;
    CVector out(cfg.n_elements());
    for (int p = 0; p < cfg.n_x; ++p) {
        const cdouble h = dft_phase(f_h, p, period_h);
        for (int q = 0; q < cfg.n_y; ++q) {
            out(p * cfg.n_y + q) = h * dft_phase(f_v, q, period_v);
        }
    }
    return out;
}

CMatrix build_beamset(int q1, int q2, const AntennaConfig& cfg) {
    cfg.validate();
    if (q1 < 0 || q1 >= cfg.o1 || q2 < 0 || q2 >= cfg.o2) {
        throw DomainError("build_beamset: offsets (" + std::to_string(q1) + ", " + std::to_string(q2) +
                          ") outside [0, " + std::to_string(cfg.o1) + ") x [0, " + std::to_string(cfg.o2) +
                          ")");
    }
    CMatrix v(cfg.n_elements(), cfg.n_elements());
    for (int n1 = 0; n1 < cfg.n_x; ++n1) {
        for (int n2 = 0; n2 < cfg.n_y; ++n2) {
            v.col(n1 * cfg.n_y + n2) = steering_beam(cfg.o1 * n1 + q1, cfg.o2 * n2 + q2, cfg);
        }
    }
    return v;
}

BeamspaceGrid::BeamspaceGrid(const AntennaConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    beamsets_.reserve(static_cast<std::size_t>(cfg_.n_beamsets()));
    for (int q1 = 0; q1 < cfg_.o1; ++q1) {
        for (int q2 = 0; q2 < cfg_.o2; ++q2) {
            beamsets_.push_back(build_beamset(q1, q2, cfg_));
        }
    }
}

const CMatrix& BeamspaceGrid::beamset(int b) const {
    if (b < 0 || b >= size()) {
        throw DomainError("beamset index " + std::to_string(b) + " outside [0, " + std::to_string(size()) + ")");
    }
    return beamsets_[static_cast<std::size_t>(b)];
}

int BeamspaceGrid::flat_index(int q1, int q2) const {
    if (q1 < 0 || q1 >= cfg_.o1 || q2 < 0 || q2 >= cfg_.o2) {
        throw DomainError("beamset offsets out of range");
    }
    return q1 * cfg_.o2 + q2;
}

std::pair<int, int> BeamspaceGrid::offsets(int b) const {
    if (b < 0 || b >= size()) {
        throw DomainError("beamset index out of range");
    }
    return {b / cfg_.o2, b % cfg_.o2};
}

std::pair<int, int> BeamspaceGrid::grid_indices(int b, int i) const {
    const auto [q1, q2] = offsets(b);
    if (i < 0 || i >= beams_per_set()) {
        throw DomainError("beam index out of range");
    }
    const int n1 = i / cfg_.n_y;
    const int n2 = i % cfg_.n_y;
    return {cfg_.o1 * n1 + q1, cfg_.o2 * n2 + q2};
}

}  // namespace portcycle
