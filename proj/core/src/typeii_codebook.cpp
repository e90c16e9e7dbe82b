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

#include "portcycle/typeii_codebook.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "portcycle/errors.hpp"
#include "portcycle/linalg.hpp"

namespace portcycle {

namespace {

// Relative margin under which two powers count as equal for tie-breaking.
constexpr double kTieTolerance = 1e-13;

void check_covariance(const CMatrix& r, const BeamspaceGrid& grid) {
    const int n_t = grid.config().n_t();
    if (r.rows() != n_t || r.cols() != n_t) {
        throw DomainError("covariance is " + std::to_string(r.rows()) + "x" + std::to_string(r.cols()) +
                          " but the beam grid expects " + std::to_string(n_t) + "x" + std::to_string(n_t));
    }
}

void check_selection(const BeamspaceGrid& grid, int beamset, std::span<const int> beam_indices) {
    if (beamset < 0 || beamset >= grid.size()) {
        throw DomainError("beamset index " + std::to_string(beamset) + " out of range");
    }
    if (beam_indices.empty()) {
        throw DomainError("at least one beam index is required");
    }
    for (std::size_t i = 0; i < beam_indices.size(); ++i) {
        const int idx = beam_indices[i];
        if (idx < 0 || idx >= grid.beams_per_set()) {
            throw DomainError("beam index " + std::to_string(idx) + " out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (beam_indices[j] == idx) {
                throw DomainError("beam index " + std::to_string(idx) + " selected twice");
            }
        }
    }
}

// Lowest index whose value is within the tie margin of the maximum over `alive`.
template <typename Values>
int pick_max(const Values& values, const std::vector<bool>& alive) {
    double best = -1.0;
    for (std::size_t i = 0; i < alive.size(); ++i) {
        if (alive[i]) {
            best = std::max(best, values[static_cast<Eigen::Index>(i)]);
        }
    }
    const double floor = best - kTieTolerance * std::abs(best);
    for (std::size_t i = 0; i < alive.size(); ++i) {
        if (alive[i] && values[static_cast<Eigen::Index>(i)] >= floor) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

}  // namespace

QuantizationTables QuantizationTables::standard(int n_psk) {
    if (n_psk < 1) {
        throw ConfigError("n_psk must be >= 1");
    }
    QuantizationTables t;
    t.amplitudes = {0.0,
                    std::sqrt(1.0 / 64.0),
                    std::sqrt(1.0 / 32.0),
                    std::sqrt(1.0 / 16.0),
                    std::sqrt(1.0 / 8.0),
                    std::sqrt(1.0 / 4.0),
                    std::sqrt(1.0 / 2.0),
                    1.0};
    t.n_psk = n_psk;
    return t;
}

double QuantizationTables::amplitude(int level) const {
    if (level < 0 || level >= n_amplitude_levels()) {
        throw DomainError("amplitude level " + std::to_string(level) + " out of range");
    }
    return amplitudes[static_cast<std::size_t>(level)];
}

double QuantizationTables::phase_angle(int level) const {
    if (level < 0 || level >= n_psk) {
        throw DomainError("phase level " + std::to_string(level) + " out of range");
    }
    return kTwoPi * static_cast<double>(level) / static_cast<double>(n_psk);
}

cdouble QuantizationTables::phase(int level) const { return std::polar(1.0, phase_angle(level)); }

void validate_report(const TypeIIReport& report, const BeamspaceGrid& grid, const QuantizationTables& tables) {
    check_selection(grid, report.beamset, report.beam_indices);
    const auto slots = static_cast<std::size_t>(2 * report.num_beams());
    if (report.amp_levels.size() != slots || report.phase_levels.size() != slots) {
        throw DomainError("report needs " + std::to_string(slots) + " amplitude and phase levels");
    }
    for (std::size_t i = 0; i < slots; ++i) {
        if (report.amp_levels[i] < 0 || report.amp_levels[i] >= tables.n_amplitude_levels()) {
            throw DomainError("amplitude level out of range in slot " + std::to_string(i));
        }
        if (report.phase_levels[i] < 0 || report.phase_levels[i] >= tables.n_psk) {
            throw DomainError("phase level out of range in slot " + std::to_string(i));
        }
    }
    if (report.strongest < 0 || static_cast<std::size_t>(report.strongest) >= slots) {
        throw DomainError("strongest slot out of range");
    }
}

Eigen::VectorXd beam_powers(const CMatrix& r, const BeamspaceGrid& grid, int b) {
    check_covariance(r, grid);
    const int half = grid.config().n_elements();
    const CMatrix co_pol = r.topLeftCorner(half, half) + r.bottomRightCorner(half, half);
    const CMatrix& v = grid.beamset(b);
    // diag(V^H M V) without forming the full product.
    const CMatrix mv = co_pol * v;
    Eigen::VectorXd powers(v.cols());
    for (Eigen::Index i = 0; i < v.cols(); ++i) {
        powers(i) = std::abs(v.col(i).dot(mv.col(i)));
    }
    return powers;
}

BeamSelection select_beamset_and_indices(const CMatrix& r, const BeamspaceGrid& grid, int num_beams) {
    check_covariance(r, grid);
    if (num_beams < 1 || num_beams > grid.beams_per_set()) {
        throw DomainError("number of beams " + std::to_string(num_beams) + " must lie in [1, " +
                          std::to_string(grid.beams_per_set()) + "]");
    }

    std::vector<BeamSelection> per_set(static_cast<std::size_t>(grid.size()));
    Eigen::VectorXd scores(grid.size());
    for (int b = 0; b < grid.size(); ++b) {
        const Eigen::VectorXd powers = beam_powers(r, grid, b);
        std::vector<bool> alive(static_cast<std::size_t>(powers.size()), true);
        BeamSelection& sel = per_set[static_cast<std::size_t>(b)];
        sel.beamset = b;
        for (int l = 0; l < num_beams; ++l) {
            const int i = pick_max(powers, alive);
            alive[static_cast<std::size_t>(i)] = false;
            sel.beam_indices.push_back(i);
            sel.score += powers(i);
        }
        scores(b) = sel.score;
    }

    const std::vector<bool> all(static_cast<std::size_t>(grid.size()), true);
    return per_set[static_cast<std::size_t>(pick_max(scores, all))];
}

WidebandCoefficients wideband_coefficients_from_eigenvector(const CVector& e, const BeamspaceGrid& grid,
                                                            int beamset, std::span<const int> beam_indices) {
    check_selection(grid, beamset, beam_indices);
    const int half = grid.config().n_elements();
    if (e.size() != 2 * half) {
        throw DomainError("eigenvector length does not match the beam grid");
    }
    const int num_beams = static_cast<int>(beam_indices.size());

    // Projection of each polarization half onto each selected beam.
    std::vector<cdouble> raw(static_cast<std::size_t>(2 * num_beams));
    for (int pol = 0; pol < 2; ++pol) {
        const auto part = e.segment(pol * half, half);
        for (int l = 0; l < num_beams; ++l) {
            raw[static_cast<std::size_t>(pol * num_beams + l)] = grid.beam(beamset, beam_indices[l]).dot(part);
        }
    }

    Eigen::VectorXd mags(static_cast<Eigen::Index>(raw.size()));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        mags(static_cast<Eigen::Index>(i)) = std::abs(raw[i]);
    }
    // Projections at rounding level count as zero.
    if (mags.maxCoeff() <= 1e-12 * std::sqrt(static_cast<double>(half)) * e.norm()) {
        throw DegenerateError("dominant eigenvector has no energy on the selected beams");
    }
    const std::vector<bool> all(raw.size(), true);

    WidebandCoefficients out;
    out.strongest = pick_max(mags, all);
    const cdouble ref = raw[static_cast<std::size_t>(out.strongest)];
    out.coefficients.reserve(raw.size());
    for (const cdouble c : raw) {
        out.coefficients.push_back(c / ref);
    }
    out.coefficients[static_cast<std::size_t>(out.strongest)] = cdouble{1.0, 0.0};
    return out;
}

WidebandCoefficients wideband_coefficients(const CMatrix& r, const BeamspaceGrid& grid, int beamset,
                                           std::span<const int> beam_indices) {
    check_covariance(r, grid);
    return wideband_coefficients_from_eigenvector(dominant_eigenpair(r).vector, grid, beamset, beam_indices);
}

int quantize_amplitude(double a, const QuantizationTables& tables) {
    if (!(a >= 0.0)) {
        throw DomainError("quantize_amplitude: amplitude must be non-negative");
    }
    int best = 0;
    double best_dist = std::abs(tables.amplitudes[0] - a);
    for (int i = 1; i < tables.n_amplitude_levels(); ++i) {
        const double d = std::abs(tables.amplitudes[static_cast<std::size_t>(i)] - a);
        if (d <= best_dist) {
            best = i;
            best_dist = d;
        }
    }
    return best;
}

int quantize_phase(double theta, const QuantizationTables& tables) {
    if (!std::isfinite(theta)) {
        throw DomainError("quantize_phase: phase must be finite");
    }
    int best = 0;
    double best_dist = std::abs(std::remainder(theta, kTwoPi));
    for (int n = 1; n < tables.n_psk; ++n) {
        const double d = std::abs(std::remainder(theta - tables.phase_angle(n), kTwoPi));
        if (d < best_dist) {
            best = n;
            best_dist = d;
        }
    }
    return best;
}

AmpPhaseLevels quantize_coefficients(const WidebandCoefficients& coeffs, const QuantizationTables& tables) {
    AmpPhaseLevels out;
    out.strongest = coeffs.strongest;
    for (const cdouble c : coeffs.coefficients) {
        // Values above 1 can only come from rounding at the strongest slot.
        out.amp_levels.push_back(quantize_amplitude(std::min(std::abs(c), 1.0), tables));
        out.phase_levels.push_back(quantize_phase(std::arg(c), tables));
    }
    out.amp_levels[static_cast<std::size_t>(out.strongest)] = tables.unit_amplitude_level();
    out.phase_levels[static_cast<std::size_t>(out.strongest)] = 0;
    return out;
}

AmpPhaseLevels compute_wideband_amp_phase(const CMatrix& r, int beamset, std::span<const int> beam_indices,
                                          const BeamspaceGrid& grid, const QuantizationTables& tables) {
    return quantize_coefficients(wideband_coefficients(r, grid, beamset, beam_indices), tables);
}

CVector combine_beams(const BeamspaceGrid& grid, int beamset, std::span<const int> beam_indices,
                      std::span<const cdouble> coefficients) {
    check_selection(grid, beamset, beam_indices);
    const int num_beams = static_cast<int>(beam_indices.size());
    if (coefficients.size() != static_cast<std::size_t>(2 * num_beams)) {
        throw DomainError("combine_beams: expected " + std::to_string(2 * num_beams) + " coefficients");
    }
    double power = 0.0;
    for (const cdouble c : coefficients) {
        power += std::norm(c);
    }
    if (power <= 0.0) {
        throw DegenerateError("combine_beams: all coefficients are zero");
    }

    const int half = grid.config().n_elements();
    CVector w = CVector::Zero(2 * half);
    for (int pol = 0; pol < 2; ++pol) {
        auto part = w.segment(pol * half, half);
        for (int l = 0; l < num_beams; ++l) {
            part += coefficients[static_cast<std::size_t>(pol * num_beams + l)] * grid.beam(beamset, beam_indices[l]);
        }
    }
    // Beams of one set are orthogonal with squared norm n_x * n_y.
    const double lambda = 1.0 / std::sqrt(static_cast<double>(half) * power);
    return lambda * w;
}

CVector assemble_precoder(const TypeIIReport& report, const BeamspaceGrid& grid, const QuantizationTables& tables) {
    validate_report(report, grid, tables);
    std::vector<cdouble> coeffs;
    coeffs.reserve(report.amp_levels.size());
    for (std::size_t i = 0; i < report.amp_levels.size(); ++i) {
        coeffs.push_back(tables.amplitude(report.amp_levels[i]) * tables.phase(report.phase_levels[i]));
    }
    try {
        return combine_beams(grid, report.beamset, report.beam_indices, coeffs);
    } catch (const DegenerateError&) {
        throw DegenerateError("assemble_precoder: report has all-zero amplitudes");
    }
}

TypeIIReport ground_truth_report(const CMatrix& r, const BeamspaceGrid& grid, const QuantizationTables& tables,
                                 int num_beams) {
    const BeamSelection sel = select_beamset_and_indices(r, grid, num_beams);
    const AmpPhaseLevels levels = compute_wideband_amp_phase(r, sel.beamset, sel.beam_indices, grid, tables);
    TypeIIReport report;
    report.beamset = sel.beamset;
    report.beam_indices = sel.beam_indices;
    report.amp_levels = levels.amp_levels;
    report.phase_levels = levels.phase_levels;
    report.strongest = levels.strongest;
    return report;
}

}  // namespace portcycle
