// Copyright 2026 The qecdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECDYN_CANONICAL_H
#define QECDYN_CANONICAL_H

#include <array>
#include <optional>

#include "json.hpp"
#include "qecdyn/channel.h"
#include "qecdyn/coding_map.h"

namespace qecdyn {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Transfer matrix of rho -> U rho U^dagger with U = exp(i theta sigma / 2).
/// The Bloch block is the rotation by -theta about the sigma axis.
Channel rotation_channel(Letter axis, double theta);

struct Svd3 {
    Matrix3 u;  // left singular vectors as columns
    Vec3 s;     // descending, non-negative
    Matrix3 v;  // right singular vectors as columns
};

/// A = U diag(s) V^T by one-sided Jacobi sweeps. U and V are orthogonal (not
/// necessarily proper); singular values sorted descending, ties by index.
Svd3 svd3(const Matrix3 &a);

/// N = U2 * T * U1^T with U1, U2 rotation channels (1 + SO(3)) and
/// T = [[1,0],[t', det_sign * diag(lambdas)]].
struct CanonicalForm {
    Vec3 t_prime;
    Vec3 lambdas;
    int det_sign;
    Channel u1;
    Channel u2;

    /// The canonical matrix T.
    Channel canonical() const;
    /// U2 * T * U1^T.
    Channel reconstruct() const;
};

CanonicalForm svd_canonical(const Channel &n);

nlohmann::json to_json(const CanonicalForm &cf);

/// Outcome of the canonical-form convergence test for a CSS code.
struct CanonicalConvergence {
    /// Whether [t'_i, lambda_i] converges to [0, 1] under the X-row and the
    /// Z-row pair maps (identical for codes symmetric under X <-> Z).
    std::array<bool, 3> converges_as_x{};
    std::array<bool, 3> converges_as_z{};
    bool correctable = false;
    /// Axes sent to X and Z when correctable.
    size_t axis_to_x = 0;
    size_t axis_to_z = 0;
    /// Axis permutation A (an SO(4) matrix fixing I) and sign matrix
    /// B = diag(1, s, 1, s), so that A T A^T B has rows X and Z equal to
    /// [t'_i, lambda_i, 0, 0] and [t'_j, 0, 0, lambda_j].
    Matrix4 a{};
    Matrix4 b{};
    std::optional<Channel> transformed;
};

/// One step of the pair map: the reduced row map applied to [a, b, 0, 0].
Vec4 pair_map_step(const ReducedRowMap &row_map, double a, double b);
bool pair_converges(const ReducedRowMap &row_map, double a, double b, size_t max_iter = 200);

/// Among axis pairs whose pair maps converge, picks the one with the largest
/// min(lambda_i, lambda_j), ties by index. Throws UnsupportedError for
/// non-CSS maps.
CanonicalConvergence canonical_convergence(const CodingMap &map, const CanonicalForm &cf);

/// Smallest b such that [a, b] converges for every a on a grid of `a_steps`
/// points over [0, sqrt(1 - b^2)], by bisection over b.
double pair_boundary_b(const ReducedRowMap &row_map, size_t a_steps = 400, double tol = 1e-6);
/// Largest theta such that [sin theta, cos theta] converges, by bisection.
double pair_boundary_theta(const ReducedRowMap &row_map, double tol = 1e-9);

}  // namespace qecdyn

#endif
