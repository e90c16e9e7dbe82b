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

#include "portcycle/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "portcycle/errors.hpp"
#include "portcycle/linalg.hpp"

namespace portcycle {

CVector dominant_eigenvector(const CMatrix& r) { return dominant_eigenpair(r).vector; }

double sgcs(const CVector& v_eig, const CVector& w) {
    if (v_eig.size() != w.size()) {
        throw DomainError("sgcs: vector lengths differ");
    }
    const double nv = v_eig.squaredNorm();
    const double nw = w.squaredNorm();
    if (nv == 0.0 || nw == 0.0) {
        throw DomainError("sgcs: zero vector");
    }
    return std::norm(v_eig.dot(w)) / (nv * nw);
}

double bf_gain(const CVector& w, const CMatrix& r, const CVector& v_eig) {
    if (r.rows() != w.size() || r.cols() != w.size() || v_eig.size() != w.size()) {
        throw DomainError("bf_gain: dimension mismatch");
    }
    const double optimal = std::real(v_eig.dot(r * v_eig));
    if (!(optimal > 0.0)) {
        throw DegenerateError("bf_gain: eigen-beamformer captures no power");
    }
    return std::real(w.dot(r * w)) / optimal;
}

ReportAccuracy report_accuracy(const TypeIIReport& pred, const TypeIIReport& truth) {
    const int num_beams = truth.num_beams();
    if (pred.num_beams() != num_beams || pred.amp_levels.size() != truth.amp_levels.size() ||
        pred.phase_levels.size() != truth.phase_levels.size() ||
        truth.amp_levels.size() != static_cast<std::size_t>(2 * num_beams)) {
        throw DomainError("report_accuracy: reports use different beam counts");
    }

    ReportAccuracy acc;
    acc.beamset = pred.beamset == truth.beamset;
    std::vector<int> a = pred.beam_indices;
    std::vector<int> b = truth.beam_indices;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    acc.beam_indices = a == b;

    // slot_map[truth slot] = pred slot.
    std::vector<std::size_t> slot_map(static_cast<std::size_t>(2 * num_beams));
    for (int pol = 0; pol < 2; ++pol) {
        for (int l = 0; l < num_beams; ++l) {
            int match = l;
            if (acc.beam_indices) {
                const auto it = std::find(pred.beam_indices.begin(), pred.beam_indices.end(),
                                          truth.beam_indices[static_cast<std::size_t>(l)]);
                match = static_cast<int>(it - pred.beam_indices.begin());
            }
            slot_map[static_cast<std::size_t>(pol * num_beams + l)] = static_cast<std::size_t>(pol * num_beams + match);
        }
    }

    std::size_t amp_hits = 0;
    std::size_t phase_hits = 0;
    for (std::size_t s = 0; s < slot_map.size(); ++s) {
        amp_hits += pred.amp_levels[slot_map[s]] == truth.amp_levels[s] ? 1 : 0;
        phase_hits += pred.phase_levels[slot_map[s]] == truth.phase_levels[s] ? 1 : 0;
    }
    const auto slots = static_cast<double>(slot_map.size());
    acc.amplitude_fraction = static_cast<double>(amp_hits) / slots;
    acc.phase_fraction = static_cast<double>(phase_hits) / slots;
    acc.amplitudes = amp_hits == slot_map.size();
    acc.phases = phase_hits == slot_map.size();
    return acc;
}

namespace {

MetricStats stats(const std::vector<double>& xs) {
    MetricStats s;
    for (const double x : xs) {
        s.mean += x;
    }
    s.mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (const double x : xs) {
        ss += (x - s.mean) * (x - s.mean);
    }
    s.std = std::sqrt(ss / static_cast<double>(xs.size()));
    return s;
}

double flag(bool b) { return b ? 1.0 : 0.0; }

}  // namespace

std::vector<SummaryRow> aggregate(std::span<const EvalRecord> records) {
    if (records.empty()) {
        throw DomainError("aggregate: no records");
    }
    std::map<double, std::vector<const EvalRecord*>> groups;
    for (const EvalRecord& r : records) {
        if (std::isnan(r.snr_db)) {
            throw DomainError("aggregate: SNR must not be NaN");
        }
        groups[r.snr_db].push_back(&r);
    }

    std::vector<SummaryRow> rows;
    for (const auto& [snr, group] : groups) {
        const auto column = [&group](auto&& get) {
            std::vector<double> xs;
            xs.reserve(group.size());
            for (const EvalRecord* r : group) {
                xs.push_back(get(*r));
            }
            return stats(xs);
        };
        SummaryRow row;
        row.snr_db = snr;
        row.count = group.size();
        row.sgcs = column([](const EvalRecord& r) { return r.sgcs; });
        row.bf_gain = column([](const EvalRecord& r) { return r.bf_gain; });
        row.acc_beamset = column([](const EvalRecord& r) { return flag(r.accuracy.beamset); });
        row.acc_indices = column([](const EvalRecord& r) { return flag(r.accuracy.beam_indices); });
        row.acc_amp = column([](const EvalRecord& r) { return flag(r.accuracy.amplitudes); });
        row.acc_phase = column([](const EvalRecord& r) { return flag(r.accuracy.phases); });
        row.acc_amp_slot = column([](const EvalRecord& r) { return r.accuracy.amplitude_fraction; });
        row.acc_phase_slot = column([](const EvalRecord& r) { return r.accuracy.phase_fraction; });
        rows.push_back(row);
    }
    return rows;
}

}  // namespace portcycle
