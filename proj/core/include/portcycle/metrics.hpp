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

#include <span>
#include <vector>

#include "portcycle/typeii_codebook.hpp"
#include "portcycle/types.hpp"

namespace portcycle {

/// Unit-norm eigenvector of the largest eigenvalue, first non-negligible
/// entry real and positive.
CVector dominant_eigenvector(const CMatrix& r);

/// Squared generalized cosine similarity |v^H w|^2 / (|v|^2 |w|^2).
double sgcs(const CVector& v_eig, const CVector& w);

/// (w^H R w) / (v^H R v).
double bf_gain(const CVector& w, const CMatrix& r, const CVector& v_eig);

struct ReportAccuracy {
    bool beamset = false;
    /// Set equality; slot order is ignored.
    bool beam_indices = false;
    bool amplitudes = false;
    bool phases = false;
    double amplitude_fraction = 0.0;
    double phase_fraction = 0.0;
};

/// Slots are matched by beam identity when the index sets agree, and by
/// position otherwise.
ReportAccuracy report_accuracy(const TypeIIReport& pred, const TypeIIReport& truth);

struct EvalRecord {
    double snr_db = 0.0;
    double sgcs = 0.0;
    double bf_gain = 0.0;
    ReportAccuracy accuracy;
};

struct MetricStats {
    double mean = 0.0;
    double std = 0.0;
};

struct SummaryRow {
    double snr_db = 0.0;
    std::size_t count = 0;
    MetricStats sgcs;
    MetricStats bf_gain;
    MetricStats acc_beamset;
    MetricStats acc_indices;
    MetricStats acc_amp;
    MetricStats acc_phase;
    MetricStats acc_amp_slot;
    MetricStats acc_phase_slot;
};

/// Per-SNR mean and population standard deviation, ascending in SNR.
std::vector<SummaryRow> aggregate(std::span<const EvalRecord> records);

}  // namespace portcycle
