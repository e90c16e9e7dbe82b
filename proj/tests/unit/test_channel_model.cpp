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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "portcycle/channel_model.hpp"
#include "portcycle/errors.hpp"
#include "portcycle/seeding.hpp"

using namespace portcycle;

namespace {

ScenarioConfig small_scenario() {
    ScenarioConfig sc;
    sc.n_subcarriers = 8;
    sc.n_rx = 2;
    return sc;
}

AntennaConfig small_array() {
    AntennaConfig a;
    a.n_x = 4;
    a.n_y = 2;
    return a;
}

double mean_entry_power(const ChannelSnapshot& s) {
    double p = 0.0;
    std::size_t n = 0;
    for (const CMatrix& hk : s.h) {
        p += hk.squaredNorm();
        n += static_cast<std::size_t>(hk.size());
    }
    return p / static_cast<double>(n);
}

}  // namespace

TEST(ChannelModel, Deterministic) {
    const auto a = generate_channel(small_scenario(), small_array(), 42);
    const auto b = generate_channel(small_scenario(), small_array(), 42);
    ASSERT_EQ(a.clusters.size(), b.clusters.size());
    for (std::size_t c = 0; c < a.clusters.size(); ++c) {
        EXPECT_EQ(a.clusters[c].f_h, b.clusters[c].f_h);
        EXPECT_EQ(a.clusters[c].gain, b.clusters[c].gain);
        EXPECT_EQ(a.clusters[c].doppler_hz, b.clusters[c].doppler_hz);
    }
    const auto sa = snapshot_at(a, 0.013);
    const auto sb = snapshot_at(b, 0.013);
    for (std::size_t k = 0; k < sa.h.size(); ++k) {
        EXPECT_EQ(sa.h[k], sb.h[k]);
    }
}

TEST(ChannelModel, RayInvariants) {
    const ScenarioConfig sc;
    const AntennaConfig ant;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto real = generate_channel(sc, ant, seed);
        ASSERT_EQ(static_cast<int>(real.clusters.size()), sc.n_clusters);
        double power = 0.0;
        for (const auto& ray : real.clusters) {
            EXPECT_LE(std::abs(ray.doppler_hz), sc.max_doppler_hz() * (1.0 + 1e-12));
            EXPECT_GE(ray.f_h, 0.0);
            EXPECT_LT(ray.f_h, ant.o1 * ant.n_x);
            EXPECT_GE(ray.f_v, 0.0);
            EXPECT_LT(ray.f_v, ant.o2 * ant.n_y);
            EXPECT_EQ(ray.rx_signature.size(), sc.n_rx);
            power += std::norm(ray.gain);
        }
        EXPECT_NEAR(power, 1.0, 1e-12);
    }
}

TEST(ChannelModel, PureLosIsRankOne) {
    ScenarioConfig sc = small_scenario();
    sc.n_clusters = 1;
    sc.los_k_factor_db = std::numeric_limits<double>::infinity();
    const auto real = generate_channel(sc, small_array(), 9);
    ASSERT_EQ(real.clusters.size(), 1u);
    const auto snap = snapshot_at(real, 0.02);
    for (const CMatrix& hk : snap.h) {
        Eigen::JacobiSVD<CMatrix> svd(hk);
        const auto sv = svd.singularValues();
        EXPECT_GT(sv(0), 0.0);
        EXPECT_LT(sv(1), 1e-12 * sv(0));
    }
}

TEST(ChannelModel, UnitAveragePowerMonteCarlo) {
    const ScenarioConfig sc = small_scenario();
    const AntennaConfig ant = small_array();
    double acc = 0.0;
    constexpr int kSeeds = 1000;
    for (int s = 0; s < kSeeds; ++s) {
        acc += mean_entry_power(snapshot_at(generate_channel(sc, ant, derive_seed(5, s)), 0.0));
    }
    EXPECT_NEAR(acc / kSeeds, 1.0, 0.05);
}

TEST(ChannelModel, SingleRayFlatSnapshotFormula) {
    ScenarioConfig sc = small_scenario();
    sc.n_clusters = 1;
    const AntennaConfig ant = small_array();
    const auto real = generate_channel(sc, ant, 3);
    const RayCluster& ray = real.clusters[0];
    ASSERT_EQ(ray.delay_s, 0.0);
    const CMatrix expected = ray.gain * ray.rx_signature * transmit_signature(ray, ant).adjoint();
    const auto snap = snapshot_at(real, 0.0);
    for (const CMatrix& hk : snap.h) {
        EXPECT_LT((hk - expected).norm(), 1e-12);
    }
}

TEST(ChannelModel, DopplerRotatesSingleRay) {
    ScenarioConfig sc = small_scenario();
    sc.n_clusters = 1;
    const auto real = generate_channel(sc, small_array(), 11);
    const double fd = real.clusters[0].doppler_hz;
    const double t = 0.02;
    const auto s0 = snapshot_at(real, 0.0);
    const auto s1 = snapshot_at(real, t);
    const cdouble rot = std::polar(1.0, 2.0 * M_PI * fd * t);
    EXPECT_LT((s1.h[0] - rot * s0.h[0]).norm(), 1e-12);
}

TEST(ChannelModel, TransmitSignatureStacksPolarizations) {
    RayCluster ray;
    ray.f_h = 1.5;
    ray.f_v = 0.25;
    ray.pol_weights = {cdouble{0.6, 0.0}, cdouble{0.0, 0.8}};
    const AntennaConfig ant = small_array();
    const CVector a = transmit_signature(ray, ant);
    const CVector base = steering_vector(1.5, 0.25, ant);
    EXPECT_LT((a.head(8) - 0.6 * base).norm(), 1e-14);
    EXPECT_LT((a.tail(8) - cdouble{0.0, 0.8} * base).norm(), 1e-14);
}

TEST(ChannelModel, ToneGridIsCentered) {
    ScenarioConfig sc;
    sc.n_subcarriers = 4;
    EXPECT_DOUBLE_EQ(sc.tone_offset_hz(0), -1.5 * 12 * 15e3);
    EXPECT_DOUBLE_EQ(sc.tone_offset_hz(3), 1.5 * 12 * 15e3);
}

TEST(ChannelModel, InvalidScenarioRejected) {
    ScenarioConfig sc;
    sc.n_subcarriers = 0;
    EXPECT_THROW(generate_channel(sc, AntennaConfig{}, 1), ConfigError);
    sc = ScenarioConfig{};
    sc.csi_period_s = 0.0;
    EXPECT_THROW(sc.validate(), ConfigError);
}

TEST(Noise, NoiselessSentinelIsIdentity) {
    const auto snap = snapshot_at(generate_channel(small_scenario(), small_array(), 1), 0.0);
    const auto out = add_measurement_noise(snap, kNoiselessSnr, 99);
    for (std::size_t k = 0; k < snap.h.size(); ++k) {
        EXPECT_EQ(out.h[k], snap.h[k]);
    }
}

TEST(Noise, ZeroDbRatioMonteCarlo) {
    ScenarioConfig sc;
    sc.n_subcarriers = 200;
    sc.n_rx = 4;
    const auto snap = snapshot_at(generate_channel(sc, AntennaConfig{}, 2), 0.0);
    const auto noisy = add_measurement_noise(snap, 0.0, 77);
    double sig = 0.0;
    double noise = 0.0;
    for (std::size_t k = 0; k < snap.h.size(); ++k) {
        sig += snap.h[k].squaredNorm();
        noise += (noisy.h[k] - snap.h[k]).squaredNorm();
    }
    ASSERT_GE(static_cast<long>(snap.h.size()) * snap.h[0].size(), 100000);
    EXPECT_NEAR(noise / sig, 1.0, 0.05);
}

TEST(Noise, SeedsGiveDifferentNoiseWithSameStatistics) {
    ScenarioConfig sc;
    sc.n_subcarriers = 100;
    const auto snap = snapshot_at(generate_channel(sc, AntennaConfig{}, 4), 0.0);
    const auto a = add_measurement_noise(snap, 10.0, 1);
    const auto b = add_measurement_noise(snap, 10.0, 2);
    double pa = 0.0, pb = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < snap.h.size(); ++k) {
        pa += (a.h[k] - snap.h[k]).squaredNorm();
        pb += (b.h[k] - snap.h[k]).squaredNorm();
        diff += (a.h[k] - b.h[k]).squaredNorm();
    }
    EXPECT_GT(diff, 0.0);
    EXPECT_NEAR(pa / pb, 1.0, 0.05);
}

TEST(Noise, InvalidSnrRejected) {
    const auto snap = snapshot_at(generate_channel(small_scenario(), small_array(), 1), 0.0);
    EXPECT_THROW(add_measurement_noise(snap, std::nan(""), 1), DomainError);
    EXPECT_THROW(add_measurement_noise(snap, -std::numeric_limits<double>::infinity(), 1), DomainError);
}

TEST(Covariance, SingleToneIsGram) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    CMatrix h(3, 5);
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        h.data()[i] = cdouble{g(rng), g(rng)};
    }
    const std::vector<CMatrix> tones{h};
    EXPECT_LT((wideband_covariance(tones) - h.adjoint() * h).norm(), 1e-12);
}

TEST(Covariance, FlatSingleRayIsRankOne) {
    const CVector r = (CVector(3) << cdouble{1, 0}, cdouble{0, 1}, cdouble{-1, 1}).finished();
    const CVector a = (CVector(4) << cdouble{1, 0}, cdouble{0.5, 0.5}, cdouble{0, -1}, cdouble{2, 0}).finished();
    const cdouble g{0.3, -0.4};
    const CMatrix hk = g * r * a.adjoint();
    const std::vector<CMatrix> tones(6, hk);
    const CMatrix expected = std::norm(g) * r.squaredNorm() * a * a.adjoint();
    EXPECT_LT((wideband_covariance(tones) - expected).norm(), 1e-12);
}

TEST(Covariance, HermitianPsd) {
    const auto snap = add_measurement_noise(snapshot_at(generate_channel(ScenarioConfig{}, AntennaConfig{}, 8), 0.0),
                                            0.0, 3);
    const CMatrix r = wideband_covariance(snap);
    EXPECT_LT((r - r.adjoint()).norm(), 1e-10 * r.norm());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10 * r.trace().real());
}

TEST(Covariance, EmptyRejected) {
    const std::vector<CMatrix> none;
    EXPECT_THROW(wideband_covariance(none), DomainError);
}
