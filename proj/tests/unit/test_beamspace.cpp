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

#include "oracles.hpp"
#include "portcycle/beamspace.hpp"
#include "portcycle/errors.hpp"

using namespace portcycle;

namespace {

AntennaConfig cfg_of(int nx, int ny, int o1, int o2) {
    AntennaConfig c;
    c.n_x = nx;
    c.n_y = ny;
    c.o1 = o1;
    c.o2 = o2;
    return c;
}

}  // namespace

TEST(Beamspace, ZeroFrequencyBeamIsAllOnes) {
    const AntennaConfig cfg;
    const CVector v = steering_beam(0, 0, cfg);
    ASSERT_EQ(v.size(), 64);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        EXPECT_NEAR(std::abs(v(i) - cdouble{1.0, 0.0}), 0.0, 1e-15);
    }
}

TEST(Beamspace, TwoElementAlternatingBeam) {
    const CVector v = steering_beam(1, 0, cfg_of(2, 1, 1, 1));
    ASSERT_EQ(v.size(), 2);
    EXPECT_NEAR(std::abs(v(0) - cdouble{1.0, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v(1) - cdouble{-1.0, 0.0}), 0.0, 1e-15);
}

TEST(Beamspace, SteeringBeamMatchesOracle) {
    const AntennaConfig cfg = cfg_of(4, 2, 4, 2);
    for (int l = 0; l < 16; ++l) {
        for (int m = 0; m < 4; ++m) {
            const CVector ref = oracle::dft_beam(l, m, 4, 2, 4, 2);
            EXPECT_LT((steering_beam(l, m, cfg) - ref).norm(), 1e-12);
        }
    }
}

TEST(Beamspace, SteeringBeamRangeChecked) {
    const AntennaConfig cfg = cfg_of(2, 2, 2, 2);
    EXPECT_THROW(steering_beam(4, 0, cfg), DomainError);
    EXPECT_THROW(steering_beam(0, -1, cfg), DomainError);
}

TEST(Beamspace, FractionalSteeringOnGridEqualsBeam) {
    const AntennaConfig cfg = cfg_of(4, 4, 4, 4);
    const CVector a = steering_vector(5.0, 3.0, cfg);
    EXPECT_LT((a - steering_beam(5, 3, cfg)).norm(), 1e-12);
}

TEST(Beamspace, BeamsetGramIsScaledIdentity) {
    const AntennaConfig cfg = cfg_of(2, 2, 2, 2);
    for (int q1 = 0; q1 < 2; ++q1) {
        for (int q2 = 0; q2 < 2; ++q2) {
            const CMatrix v = build_beamset(q1, q2, cfg);
            ASSERT_EQ(v.rows(), 4);
            ASSERT_EQ(v.cols(), 4);
            const CMatrix gram = v.adjoint() * v;
            EXPECT_LT((gram - 4.0 * CMatrix::Identity(4, 4)).norm(), 1e-12);
        }
    }
}

TEST(Beamspace, BeamsetZeroUsesEvenBeams) {
    const AntennaConfig cfg = cfg_of(2, 2, 2, 2);
    const CMatrix v = build_beamset(0, 0, cfg);
    for (int n1 = 0; n1 < 2; ++n1) {
        for (int n2 = 0; n2 < 2; ++n2) {
            EXPECT_LT((v.col(n1 * 2 + n2) - oracle::dft_beam(2 * n1, 2 * n2, 2, 2, 2, 2)).norm(), 1e-12);
        }
    }
}

TEST(Beamspace, SingleElementBeamset) {
    const CMatrix v = build_beamset(0, 0, cfg_of(1, 1, 1, 1));
    ASSERT_EQ(v.rows(), 1);
    ASSERT_EQ(v.cols(), 1);
    EXPECT_NEAR(std::abs(v(0, 0) - cdouble{1.0, 0.0}), 0.0, 1e-15);
}

TEST(Beamspace, BeamsetOffsetsRangeChecked) {
    const AntennaConfig cfg = cfg_of(2, 2, 2, 2);
    EXPECT_THROW(build_beamset(2, 0, cfg), DomainError);
    EXPECT_THROW(build_beamset(0, -1, cfg), DomainError);
}

TEST(Beamspace, EnumerationCounts) {
    EXPECT_EQ(enumerate_beamsets(cfg_of(8, 8, 4, 4)).size(), 16);
    const BeamspaceGrid single = enumerate_beamsets(cfg_of(4, 2, 1, 1));
    ASSERT_EQ(single.size(), 1);
    // One beamset spans the full DFT basis.
    const CMatrix& v = single.beamset(0);
    Eigen::FullPivLU<CMatrix> lu(v);
    EXPECT_EQ(lu.rank(), 8);
}

TEST(Beamspace, FlatIndexRoundTrip) {
    const BeamspaceGrid grid(cfg_of(4, 4, 4, 2));
    for (int b = 0; b < grid.size(); ++b) {
        const auto [q1, q2] = grid.offsets(b);
        EXPECT_EQ(grid.flat_index(q1, q2), b);
        EXPECT_EQ(b, q1 * 2 + q2);
    }
    const auto [l, m] = grid.grid_indices(3, 5);
    EXPECT_EQ(l, 4 * 1 + 1);
    EXPECT_EQ(m, 2 * 1 + 1);
}

TEST(Beamspace, BeamsAcrossSetsAreDistinct) {
    const BeamspaceGrid grid(cfg_of(2, 2, 2, 2));
    std::vector<CVector> all;
    for (int b = 0; b < grid.size(); ++b) {
        for (int i = 0; i < grid.beams_per_set(); ++i) {
            all.emplace_back(grid.beam(b, i));
        }
    }
    ASSERT_EQ(all.size(), 16u);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            EXPECT_GT((all[i] - all[j]).norm(), 1e-6);
        }
    }
}

TEST(Beamspace, InvalidConfigRejected) {
    EXPECT_THROW(cfg_of(0, 2, 1, 1).validate(), ConfigError);
    EXPECT_THROW(cfg_of(2, 2, 0, 1).validate(), ConfigError);
    AntennaConfig single_pol;
    single_pol.n_pol = 1;
    EXPECT_THROW(single_pol.validate(), ConfigError);
}
