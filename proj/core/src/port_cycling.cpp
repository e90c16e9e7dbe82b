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

#include "portcycle/port_cycling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "portcycle/errors.hpp"
#include "portcycle/seeding.hpp"
#include "portcycle/typeii_codebook.hpp"

namespace portcycle {

SubPanelPartition partition(const AntennaConfig& cfg, int rho_x, int rho_y) {
    cfg.validate();
    if (rho_x < 1 || rho_y < 1) {
        throw ConfigError("partition factors must be >= 1");
    }
    if (cfg.n_x % rho_x != 0) {
        throw ConfigError("rho_x = " + std::to_string(rho_x) + " does not divide n_x = " + std::to_string(cfg.n_x));
    }
    if (cfg.n_y % rho_y != 0) {
        throw ConfigError("rho_y = " + std::to_string(rho_y) + " does not divide n_y = " + std::to_string(cfg.n_y));
    }

    SubPanelPartition part;
    part.rho_x = rho_x;
    part.rho_y = rho_y;
    part.full = cfg;
    part.panel = cfg;
    part.panel.n_x = cfg.n_x / rho_x;
    part.panel.n_y = cfg.n_y / rho_y;

    const int elements = cfg.n_elements();
    for (int px = 0; px < rho_x; ++px) {
        for (int py = 0; py < rho_y; ++py) {
            std::vector<int> ports;
            ports.reserve(static_cast<std::size_t>(part.panel.n_t()));
            for (int pol = 0; pol < cfg.n_pol; ++pol) {
                for (int x = 0; x < part.panel.n_x; ++x) {
                    for (int y = 0; y < part.panel.n_y; ++y) {
                        const int gx = px * part.panel.n_x + x;
                        const int gy = py * part.panel.n_y + y;
                        ports.push_back(pol * elements + gx * cfg.n_y + gy);
                    }
                }
            }
            part.ports.push_back(std::move(ports));
        }
    }
    return part;
}

std::vector<CMatrix> CycleMeasurement::channel_matrices() const {
    const int panel_elements = n_x * n_y;
    std::vector<CMatrix> out(static_cast<std::size_t>(n_subcarriers), CMatrix(n_rx, kPolarizations * panel_elements));
    for (int x = 0; x < n_x; ++x) {
        for (int y = 0; y < n_y; ++y) {
            for (int rx = 0; rx < n_rx; ++rx) {
                for (int k = 0; k < n_subcarriers; ++k) {
                    for (int pol = 0; pol < kPolarizations; ++pol) {
                        out[static_cast<std::size_t>(k)](rx, pol * panel_elements + x * n_y + y) = at(x, y, rx, k, pol);
                    }
                }
            }
        }
    }
    return out;
}

CycleMeasurement extract_subpanel(const ChannelSnapshot& s, const SubPanelPartition& part, int panel_id) {
    if (panel_id < 0 || panel_id >= part.rho()) {
        throw DomainError("panel id " + std::to_string(panel_id) + " outside [0, " + std::to_string(part.rho()) + ")");
    }
    if (s.n_t() != part.full.n_t()) {
        throw DomainError("snapshot has " + std::to_string(s.n_t()) + " ports, partition expects " +
                          std::to_string(part.full.n_t()));
    }
    CycleMeasurement m;
    m.panel_id = panel_id;
    m.time_s = s.time_s;
    m.n_x = part.panel.n_x;
    m.n_y = part.panel.n_y;
    m.n_rx = s.n_rx();
    m.n_subcarriers = s.n_subcarriers();
    m.tensor.resize(static_cast<std::size_t>(m.n_x) * m.n_y * m.n_rx * m.n_subcarriers * CycleMeasurement::kPolarizations);

    const std::vector<int>& ports = part.ports[static_cast<std::size_t>(panel_id)];
    const int panel_elements = m.n_x * m.n_y;
    for (int pol = 0; pol < CycleMeasurement::kPolarizations; ++pol) {
        for (int x = 0; x < m.n_x; ++x) {
            for (int y = 0; y < m.n_y; ++y) {
                const int port = ports[static_cast<std::size_t>(pol * panel_elements + x * m.n_y + y)];
                for (int k = 0; k < m.n_subcarriers; ++k) {
                    const CMatrix& hk = s.h[static_cast<std::size_t>(k)];
                    for (int rx = 0; rx < m.n_rx; ++rx) {
                        m.at(x, y, rx, k, pol) = hk(rx, port);
                    }
                }
            }
        }
    }
    return m;
}

ChannelSnapshot reassemble(std::span<const CycleMeasurement> measurements, const SubPanelPartition& part) {
    if (static_cast<int>(measurements.size()) != part.rho()) {
        throw DomainError("reassemble needs exactly one measurement per panel");
    }
    std::vector<bool> seen(static_cast<std::size_t>(part.rho()), false);
    const CycleMeasurement& first = measurements.front();

    ChannelSnapshot out;
    out.h.assign(static_cast<std::size_t>(first.n_subcarriers), CMatrix::Zero(first.n_rx, part.full.n_t()));
    for (const CycleMeasurement& m : measurements) {
        if (m.panel_id < 0 || m.panel_id >= part.rho() || seen[static_cast<std::size_t>(m.panel_id)]) {
            throw DomainError("reassemble: panel ids must form a permutation");
        }
        if (m.n_x != part.panel.n_x || m.n_y != part.panel.n_y || m.n_rx != first.n_rx ||
            m.n_subcarriers != first.n_subcarriers) {
            throw DomainError("reassemble: measurement shape does not match the partition");
        }
        seen[static_cast<std::size_t>(m.panel_id)] = true;
        out.time_s = std::max(out.time_s, m.time_s);

        const std::vector<int>& ports = part.ports[static_cast<std::size_t>(m.panel_id)];
        const std::vector<CMatrix> local = m.channel_matrices();
        for (std::size_t k = 0; k < local.size(); ++k) {
            for (std::size_t j = 0; j < ports.size(); ++j) {
                out.h[k].col(ports[j]) = local[k].col(static_cast<Eigen::Index>(j));
            }
        }
    }
    return out;
}

CycleSchedule make_schedule(const SubPanelPartition& part, double t0, double t_csi, std::span<const int> perm) {
    const int rho = part.rho();
    if (static_cast<int>(perm.size()) != rho) {
        throw DomainError("permutation has " + std::to_string(perm.size()) + " entries, expected " +
                          std::to_string(rho));
    }
    std::vector<bool> seen(static_cast<std::size_t>(rho), false);
    for (const int p : perm) {
        if (p < 0 || p >= rho || seen[static_cast<std::size_t>(p)]) {
            throw DomainError("invalid sounding permutation");
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
    if (!(t0 >= 0.0) || !(t_csi > 0.0)) {
        throw DomainError("schedule needs t0 >= 0 and t_csi > 0");
    }
    CycleSchedule sched;
    for (int i = 0; i < rho; ++i) {
        sched.occasions.push_back({i, t0 + i * t_csi, perm[static_cast<std::size_t>(i)]});
    }
    return sched;
}

std::vector<CycleMeasurement> sound_cycle(const ChannelRealization& real, const CycleSchedule& sched,
                                          const SubPanelPartition& part, double snr_db, std::uint64_t seed) {
    if (!(real.antenna == part.full)) {
        throw DomainError("sound_cycle: realization and partition use different arrays");
    }
    std::vector<CycleMeasurement> out;
    out.reserve(sched.occasions.size());
    for (const CycleOccasion& occ : sched.occasions) {
        const ChannelSnapshot clean = snapshot_at(real, occ.time_s);
        const ChannelSnapshot noisy =
            add_measurement_noise(clean, snr_db, derive_seed(seed, static_cast<std::uint64_t>(occ.index)));
        out.push_back(extract_subpanel(noisy, part, occ.panel_id));
    }
    return out;
}

CycleQuantity per_cycle_quantity(const CycleMeasurement& m, const BeamspaceGrid& panel_grid, int num_beams) {
    if (m.n_x != panel_grid.config().n_x || m.n_y != panel_grid.config().n_y) {
        throw DomainError("per_cycle_quantity: grid does not match the panel geometry");
    }
    const CMatrix r = wideband_covariance(m.channel_matrices());
    const BeamSelection sel = select_beamset_and_indices(r, panel_grid, num_beams);
    return {sel.beamset, sel.beam_indices.front()};
}

double variation_score(std::span<const double> values) {
    if (values.size() < 2) {
        throw DomainError("variation score needs at least two cycles");
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        total += std::abs(values[i + 1] - values[i]);
    }
    return total / static_cast<double>(values.size() - 1);
}

double change_indicator_score(std::span<const double> values) {
    if (values.size() < 2) {
        throw DomainError("variation score needs at least two cycles");
    }
    std::size_t changes = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        changes += values[i + 1] != values[i] ? 1 : 0;
    }
    return static_cast<double>(changes) / static_cast<double>(values.size() - 1);
}

double variation_score(std::span<const double> values, VariationMode mode) {
    return mode == VariationMode::kIndexDifference ? variation_score(values) : change_indicator_score(values);
}

}  // namespace portcycle
