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

#include "portcycle/cli/complexity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "portcycle/errors.hpp"
#include "portcycle/linalg.hpp"

namespace portcycle::cli {

namespace {

Eigen::MatrixXd random_weights(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(d)));
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            m(i, j) = normal(rng);
        }
    }
    return m;
}

Eigen::VectorXd sigmoid(const Eigen::VectorXd& x) { return (1.0 + (-x.array()).exp()).inverse().matrix(); }

}  // namespace

CMatrix random_covariance(int n, std::uint64_t seed) {
    if (n < 1) {
        throw DomainError("random_covariance: size must be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix a(n, n);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double re = normal(rng);
            a(i, j) = cdouble{re, normal(rng)};
        }
    }
    CMatrix r = a * a.adjoint() / static_cast<double>(n);
    return 0.5 * (r + r.adjoint());
}

RecurrentAggregator::RecurrentAggregator(int latent_dim, std::uint64_t seed) {
    if (latent_dim < 1) {
        throw DomainError("latent dimension must be >= 1");
    }
    std::mt19937_64 rng(seed);
    w_update_ = random_weights(latent_dim, rng);
    u_update_ = random_weights(latent_dim, rng);
    w_reset_ = random_weights(latent_dim, rng);
    u_reset_ = random_weights(latent_dim, rng);
    w_cand_ = random_weights(latent_dim, rng);
    u_cand_ = random_weights(latent_dim, rng);
}

Eigen::VectorXd RecurrentAggregator::run(std::span<const Eigen::VectorXd> latents) const {
    Eigen::VectorXd h = Eigen::VectorXd::Zero(latent_dim());
    for (const Eigen::VectorXd& z : latents) {
        const Eigen::VectorXd update = sigmoid(w_update_ * z + u_update_ * h);
        const Eigen::VectorXd reset = sigmoid(w_reset_ * z + u_reset_ * h);
        const Eigen::VectorXd cand = (w_cand_ * z + u_cand_ * reset.cwiseProduct(h)).array().tanh().matrix();
        h = (1.0 - update.array()).matrix().cwiseProduct(h) + update.cwiseProduct(cand);
    }
    return h;
}

double seconds_per_call(const std::function<void()>& fn, double min_seconds, int batches) {
    using clock = std::chrono::steady_clock;
    fn();  // warm-up
    const double batch_budget = min_seconds / std::max(1, batches);
    std::vector<double> per_call;
    for (int b = 0; b < std::max(1, batches); ++b) {
        long calls = 0;
        const auto start = clock::now();
        double elapsed = 0.0;
        do {
            fn();
            ++calls;
            elapsed = std::chrono::duration<double>(clock::now() - start).count();
        } while (elapsed < batch_budget);
        per_call.push_back(elapsed / static_cast<double>(calls));
    }
    std::sort(per_call.begin(), per_call.end());
    return per_call[per_call.size() / 2];
}

std::vector<ScalingPoint> measure_scaling(std::span<const int> sizes, int rho, int latent_dim, double min_seconds,
                                          std::uint64_t seed) {
    if (rho < 1) {
        throw DomainError("measure_scaling: rho must be >= 1");
    }
    const RecurrentAggregator aggregator(latent_dim, seed);
    std::mt19937_64 rng(seed ^ 0x5DEECE66DULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Eigen::VectorXd> latents;
    for (int i = 0; i < rho; ++i) {
        Eigen::VectorXd z(latent_dim);
        for (Eigen::Index j = 0; j < z.size(); ++j) {
            z(j) = normal(rng);
        }
        latents.push_back(z);
    }

    std::vector<ScalingPoint> out;
    for (const int n : sizes) {
        const CMatrix r = random_covariance(n, seed + static_cast<std::uint64_t>(n));
        volatile double sink = 0.0;
        ScalingPoint p;
        p.n_t = n;
        p.evd_seconds = seconds_per_call([&]() { sink = sink + dominant_eigenpair(r).value; }, min_seconds);
        p.subpanel_seconds = seconds_per_call([&]() { sink = sink + aggregator.run(latents)(0); }, min_seconds);
        out.push_back(p);
    }
    return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("loglog_slope: need at least two paired points");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

}  // namespace portcycle::cli
