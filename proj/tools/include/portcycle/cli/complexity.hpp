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
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "portcycle/types.hpp"

namespace portcycle::cli {

/// Random Hermitian PSD matrix A A^H / n with complex Gaussian A.
CMatrix random_covariance(int n, std::uint64_t seed);

/// GRU-style recurrence over rho latent vectors of size D: the per-report
/// work of the sub-panel pipeline, O(rho * D^2) and independent of N_t.
class RecurrentAggregator {
public:
    RecurrentAggregator(int latent_dim, std::uint64_t seed);

    int latent_dim() const { return static_cast<int>(w_update_.rows()); }
    Eigen::VectorXd run(std::span<const Eigen::VectorXd> latents) const;

private:
    Eigen::MatrixXd w_update_, u_update_;
    Eigen::MatrixXd w_reset_, u_reset_;
    Eigen::MatrixXd w_cand_, u_cand_;
};

/// Median seconds per call over several timed batches of at least
/// `min_seconds / batches` each.
double seconds_per_call(const std::function<void()>& fn, double min_seconds, int batches = 5);

struct ScalingPoint {
    int n_t = 0;
    double evd_seconds = 0.0;
    double subpanel_seconds = 0.0;
};

std::vector<ScalingPoint> measure_scaling(std::span<const int> sizes, int rho, int latent_dim, double min_seconds,
                                          std::uint64_t seed);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace portcycle::cli
