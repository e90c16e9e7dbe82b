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

#include <array>
#include <span>
#include <vector>

#include "portcycle/beamspace.hpp"
#include "portcycle/types.hpp"

namespace portcycle {

/// Wideband amplitude set P (ascending, 8 levels) and the N-PSK phase set.
struct QuantizationTables {
    std::array<double, 8> amplitudes{};
    int n_psk = 8;

    static QuantizationTables standard(int n_psk = 8);

    int n_amplitude_levels() const { return static_cast<int>(amplitudes.size()); }
    int unit_amplitude_level() const { return n_amplitude_levels() - 1; }
    double amplitude(int level) const;
    double phase_angle(int level) const;
    cdouble phase(int level) const;
};

/// Quantized wideband report for one layer. Slots 0..L-1 hold the first
/// polarization and L..2L-1 the second, both over beam_indices in order.
struct TypeIIReport {
    int beamset = 0;
    std::vector<int> beam_indices;
    std::vector<int> amp_levels;
    std::vector<int> phase_levels;
    int strongest = 0;

    int num_beams() const { return static_cast<int>(beam_indices.size()); }

    bool operator==(const TypeIIReport&) const = default;
};

/// Throws DomainError naming the first violated field.
void validate_report(const TypeIIReport& report, const BeamspaceGrid& grid, const QuantizationTables& tables);

struct BeamSelection {
    int beamset = 0;
    /// Ordered by descending beam power; equal powers keep the lower index first.
    std::vector<int> beam_indices;
    /// Sum of the selected diagonal powers.
    double score = 0.0;
};

/// Beam power diag(V_b^H (R_11 + R_22) V_b) for every beam of beamset b.
Eigen::VectorXd beam_powers(const CMatrix& r, const BeamspaceGrid& grid, int b);

/// Picks the beamset whose L strongest beams carry the most power.
/// num_beams = 1 is accepted for diagnostics; reports use 2..4.
BeamSelection select_beamset_and_indices(const CMatrix& r, const BeamspaceGrid& grid, int num_beams);

/// Unquantized combining coefficients of the dominant eigenvector, scaled so
/// that the strongest slot is exactly 1.
struct WidebandCoefficients {
    std::vector<cdouble> coefficients;
    int strongest = 0;
};

WidebandCoefficients wideband_coefficients(const CMatrix& r, const BeamspaceGrid& grid, int beamset,
                                           std::span<const int> beam_indices);

/// Same as above for an already computed eigenvector.
WidebandCoefficients wideband_coefficients_from_eigenvector(const CVector& e, const BeamspaceGrid& grid,
                                                            int beamset, std::span<const int> beam_indices);

struct AmpPhaseLevels {
    std::vector<int> amp_levels;
    std::vector<int> phase_levels;
    int strongest = 0;
};

AmpPhaseLevels quantize_coefficients(const WidebandCoefficients& coeffs, const QuantizationTables& tables);

AmpPhaseLevels compute_wideband_amp_phase(const CMatrix& r, int beamset, std::span<const int> beam_indices,
                                          const BeamspaceGrid& grid, const QuantizationTables& tables);

/// Nearest element of P; exact ties go to the larger level.
int quantize_amplitude(double a, const QuantizationTables& tables);

/// Nearest PSK point by angular distance on the circle; ties go to the smaller index.
int quantize_phase(double theta, const QuantizationTables& tables);

/// Normalized linear combination of beams from one beamset with the
/// polarization-stacked coefficients (length 2L).
CVector combine_beams(const BeamspaceGrid& grid, int beamset, std::span<const int> beam_indices,
                      std::span<const cdouble> coefficients);

/// Reconstructs the unit-norm precoder of a report.
CVector assemble_precoder(const TypeIIReport& report, const BeamspaceGrid& grid, const QuantizationTables& tables);

/// Full classical pipeline: beam selection followed by amplitude/phase quantization.
TypeIIReport ground_truth_report(const CMatrix& r, const BeamspaceGrid& grid, const QuantizationTables& tables,
                                 int num_beams);

}  // namespace portcycle
