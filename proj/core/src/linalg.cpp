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

#include "portcycle/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "portcycle/errors.hpp"

namespace portcycle {

CVector canonical_phase(const CVector& v) {
    const double peak = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > 1e-12 * peak) {
            return v * (std::conj(v(i)) / mag);
        }
    }
    return v;
}

Eigenpair dominant_eigenpair(const CMatrix& r) {
    if (r.rows() == 0 || r.rows() != r.cols()) {
        throw DomainError("dominant_eigenpair: matrix must be square and non-empty");
    }
    if (r.cwiseAbs().maxCoeff() == 0.0) {
        throw DegenerateError("dominant_eigenpair: zero matrix has no dominant direction");
    }
    // Eigenvalues come back in ascending order.
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(r, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw DegenerateError("dominant_eigenpair: eigensolver did not converge");
    }
    const Eigen::Index last = r.rows() - 1;
    Eigenpair out;
    out.value = solver.eigenvalues()(last);
    out.vector = canonical_phase(solver.eigenvectors().col(last).normalized());
    return out;
}

}  // namespace portcycle
