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

#include "portcycle/types.hpp"

namespace portcycle {

struct Eigenpair {
    double value = 0.0;
    CVector vector;
};

/// Largest eigenpair of a Hermitian matrix from a full eigendecomposition.
/// The vector has unit norm and its first non-negligible entry is real and
/// positive. Throws DegenerateError for an all-zero matrix.
Eigenpair dominant_eigenpair(const CMatrix& r);

/// Rotates v so that its first entry with magnitude above 1e-12 * max|v| is
/// real and positive.
CVector canonical_phase(const CVector& v);

}  // namespace portcycle
