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

#include "portcycle/channel_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "portcycle/errors.hpp"

namespace portcycle {

namespace {

cdouble unit_phasor(double angle) { return {std::cos(angle), std::sin(angle)}; }

CVector rx_steering(int n_rx, double arrival_sin) {
    CVector r(n_rx);
    for (int i = 0; i < n_rx; ++i) {
        r(i) = unit_phasor(kPi * i * arrival_sin);
    }
    return r;
}

}  // namespace

double ScenarioConfig::tone_offset_hz(int k) const {
    return (static_cast<double>(k) - 0.5 * static_cast<double>(n_subcarriers - 1)) * tone_spacing_hz();
}

void ScenarioConfig::validate() const {
    if (!(carrier_freq_hz > 0.0) || !(bandwidth_hz > 0.0) || !(subcarrier_spacing_hz > 0.0)) {
        throw ConfigError("scenario: carrier frequency, bandwidth and subcarrier spacing must be positive");
    }
    if (n_subcarriers < 1) {
        throw ConfigError("scenario: n_subcarriers must be >= 1");
    }
    if (!(ue_speed_mps >= 0.0) || !(csi_period_s > 0.0)) {
        throw ConfigError("scenario: UE speed must be >= 0 and CSI period > 0");
    }
    if (n_rx < 1 || n_clusters < 1) {
        throw ConfigError("scenario: n_rx and n_clusters must be >= 1");
    }
    if (std::isnan(los_k_factor_db)) {
        throw ConfigError("scenario: K-factor must be a number");
    }
    if (!(max_excess_delay_s >= 0.0)) {
        throw ConfigError("scenario: max_excess_delay_s must be >= 0");
    }
}

CVector transmit_signature(const RayCluster& ray, const AntennaConfig& antenna) {
    const CVector a = steering_vector(ray.f_h, ray.f_v, antenna);
    const auto n = a.size();
    CVector out(2 * n);
    out.head(n) = ray.pol_weights[0] * a;
    out.tail(n) = ray.pol_weights[1] * a;
    return out;
}

ChannelRealization generate_channel(const ScenarioConfig& scenario, const AntennaConfig& antenna,
                                    std::uint64_t seed) {
    scenario.validate();
    antenna.validate();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    const double f_d = scenario.max_doppler_hz();
    const double k_lin = std::pow(10.0, scenario.los_k_factor_db / 10.0);
    const int n_nlos = scenario.n_clusters - 1;
    const double los_power = n_nlos == 0 ? 1.0 : (std::isinf(k_lin) ? 1.0 : k_lin / (k_lin + 1.0));
    const double nlos_power = n_nlos == 0 ? 0.0 : (1.0 - los_power) / n_nlos;

    ChannelRealization real;
    real.seed = seed;
    real.scenario = scenario;
    real.antenna = antenna;
    real.clusters.reserve(static_cast<std::size_t>(scenario.n_clusters));

    for (int c = 0; c < scenario.n_clusters; ++c) {
        const bool los = c == 0;
        RayCluster ray;
        ray.f_h = uniform(0.0, static_cast<double>(antenna.o1 * antenna.n_x));
        ray.f_v = uniform(0.0, static_cast<double>(antenna.o2 * antenna.n_y));
        if (los) {
            // Equal power on both slants of a +/-45 degree array.
            ray.pol_weights = {cdouble{1.0, 0.0}, unit_phasor(uniform(0.0, kTwoPi))};
        } else {
            const double chi = uniform(0.0, 0.5 * kPi);
            ray.pol_weights = {cdouble{std::sqrt(2.0) * std::cos(chi), 0.0},
                               std::sqrt(2.0) * std::sin(chi) * unit_phasor(uniform(0.0, kTwoPi))};
        }
        ray.rx_signature = rx_steering(scenario.n_rx, uniform(-1.0, 1.0));
        ray.gain = std::sqrt(los ? los_power : nlos_power) * unit_phasor(uniform(0.0, kTwoPi));
        ray.delay_s = los ? 0.0 : uniform(0.0, scenario.max_excess_delay_s);
        ray.doppler_hz = f_d * std::cos(uniform(0.0, kTwoPi));
        real.clusters.push_back(std::move(ray));
    }
    return real;
}

ChannelSnapshot snapshot_at(const ChannelRealization& real, double t) {
    if (!(t >= 0.0)) {
        throw DomainError("snapshot_at: time must be >= 0");
    }
    const ScenarioConfig& sc = real.scenario;
    const int n_t = real.antenna.n_t();

    ChannelSnapshot snap;
    snap.time_s = t;
    snap.h.assign(static_cast<std::size_t>(sc.n_subcarriers), CMatrix::Zero(sc.n_rx, n_t));

    for (const RayCluster& ray : real.clusters) {
        const CVector a = transmit_signature(ray, real.antenna);
        const CMatrix outer = ray.rx_signature * a.adjoint();
        const cdouble temporal = ray.gain * unit_phasor(kTwoPi * ray.doppler_hz * t);
        for (int k = 0; k < sc.n_subcarriers; ++k) {
            const cdouble tone = unit_phasor(-kTwoPi * sc.tone_offset_hz(k) * ray.delay_s);
            snap.h[static_cast<std::size_t>(k)] += (temporal * tone) * outer;
        }
    }
    return snap;
}

ChannelSnapshot add_measurement_noise(const ChannelSnapshot& s, double snr_db, std::uint64_t seed) {
    if (std::isnan(snr_db) || (std::isinf(snr_db) && snr_db < 0.0)) {
        throw DomainError("add_measurement_noise: snr_db must be finite or +inf");
    }
    if (std::isinf(snr_db)) {
        return s;
    }

    double signal = 0.0;
    std::size_t count = 0;
    for (const CMatrix& hk : s.h) {
        signal += hk.squaredNorm();
        count += static_cast<std::size_t>(hk.size());
    }
    if (count == 0) {
        return s;
    }
    const double noise_var = (signal / static_cast<double>(count)) * std::pow(10.0, -snr_db / 10.0);
    const double sigma = std::sqrt(0.5 * noise_var);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ChannelSnapshot out = s;
    for (CMatrix& hk : out.h) {
        // Column-major walk keeps the draw order independent of Eigen internals.
        for (Eigen::Index c = 0; c < hk.cols(); ++c) {
            for (Eigen::Index r = 0; r < hk.rows(); ++r) {
                const double re = normal(rng);
                const double im = normal(rng);
                hk(r, c) += sigma * cdouble{re, im};
            }
        }
    }
    return out;
}

CMatrix wideband_covariance(std::span<const CMatrix> h) {
    if (h.empty()) {
        throw DomainError("wideband_covariance: need at least one subcarrier");
    }
    const auto n_t = h.front().cols();
    CMatrix r = CMatrix::Zero(n_t, n_t);
    for (const CMatrix& hk : h) {
        if (hk.cols() != n_t) {
            throw DomainError("wideband_covariance: inconsistent transmit dimension across subcarriers");
        }
        r.noalias() += hk.adjoint() * hk;
    }
    r /= static_cast<double>(h.size());
    // Exact Hermitian symmetry; the accumulation above is only symmetric to rounding.
    return 0.5 * (r + r.adjoint());
}

}  // namespace portcycle
