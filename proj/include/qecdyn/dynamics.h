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

#ifndef QECDYN_DYNAMICS_H
#define QECDYN_DYNAMICS_H

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecdyn/channel.h"
#include "qecdyn/coding_map.h"

namespace qecdyn {

enum class TrajectoryStatus { converged_identity, converged_other, not_converged };

std::string status_name(TrajectoryStatus status);

/// Thrown by iterate when an iterate fails channel validation.
struct IterationError : std::runtime_error {
    IterationError(const std::string &what, size_t step, std::string iterate)
        : std::runtime_error(what), step(step), iterate(std::move(iterate)) {
    }
    size_t step;
    std::string iterate;
};

struct IterateOptions {
    double tol = 1e-10;
    size_t max_iter = 200;
};

/// Orbit of a map. points[0] is the start and points[i+1] = map(points[i]).
template <typename T>
struct Trajectory {
    std::vector<T> points;
    TrajectoryStatus status = TrajectoryStatus::not_converged;

    size_t iterations() const {
        return points.empty() ? 0 : points.size() - 1;
    }
    const T &last() const {
        return points.back();
    }
};

Trajectory<DiagonalChannel> iterate(
    const std::function<DiagonalChannel(const DiagonalChannel &)> &map,
    const DiagonalChannel &start,
    const IterateOptions &options = {});
Trajectory<Channel> iterate(
    const std::function<Channel(const Channel &)> &map, const Channel &start, const IterateOptions &options = {});

Trajectory<DiagonalChannel> iterate(const CodingMap &map, const DiagonalChannel &start, const IterateOptions &options = {});
Trajectory<Channel> iterate(const CodingMap &map, const Channel &start, const IterateOptions &options = {});

using VectorFunction = std::function<std::vector<double>(const std::vector<double> &)>;
using Matrix = std::vector<std::vector<double>>;

/// Central finite differences, J[i][j] = d f_i / d x_j. Throws
/// std::invalid_argument when h is not positive and finite or too small to
/// move some coordinate.
Matrix jacobian(const VectorFunction &f, const std::vector<double> &point, double h = 1e-6);
/// 3x3 Jacobian of the diagonal map, from the raw polynomials.
Matrix jacobian_diagonal(const CodingMap &map, const Vec3 &point, double h = 1e-6);
/// 12x12 Jacobian of the general map in the free parameters (rows X, Y, Z).
Matrix jacobian_general(const CodingMap &map, const Channel &point, double h = 1e-6);
double max_abs(const Matrix &m);

struct ThresholdOptions {
    size_t scan_points = 10000;
    double tol = 1e-9;
};

/// Largest root of f(x) - x in the open interval (0, 1), found by a sign-change
/// scan and bisection. Returns 0 when there is none.
double diagonal_threshold(const std::function<double(double)> &f, const ThresholdOptions &options = {});

/// The x (sigma = X) or z (sigma = Z) component of the diagonal map as a
/// one-variable function. Throws UnsupportedError when the component also
/// depends on the other two coordinates.
std::function<double(double)> component_function(const CodingMap &map, Letter sigma);

bool css_basin_member(const DiagonalChannel &c, double threshold);

/// Sampled bound on the second derivative of the diagonal map over the
/// tetrahedron: the largest Frobenius norm of the Hessian stack times 1.1.
/// Not a certified supremum.
double estimate_second_derivative_bound(const CodingMap &map, size_t samples = 1000, uint64_t seed = 1);
/// 1 / K. Throws UnsupportedError when the Jacobian at [1,1,1] is not zero and
/// std::invalid_argument when K <= 0.
double basin_ball_radius(const CodingMap &map, double k_estimate);

struct BoundsReport {
    size_t n = 0;
    size_t checks = 0;
    size_t distance = 0;
    size_t m = 0;
    double generic_bound = 0;
    double coefficient_sum_bound = 0;
    double css_bound = 0;  // 0 for non-CSS codes
    double c_d = 0;
    double c_m = 0;
    double eps = 0;
    double eps0 = 0;
    std::vector<double> a;
    std::vector<double> b;  // b[0] is unused and 0
    std::vector<Vec3> lower;
};

/// Off-diagonal growth bounds for a code of distance d >= 2. c_d = c_m is the
/// CSS bound for CSS codes and the smaller of the other two otherwise.
/// `lower` iterates L_i = map(L_{i-1}) - b_i starting from `start`.
BoundsReport nondiag_bounds(
    const StabilizerCode &code, double eps, const Vec3 &start = {1.0, 1.0, 1.0}, size_t levels = 5);

struct ShiftedThreshold {
    double x_c;
    double slope;        // d g(a,0,0,0)/da at x_c
    double coefficient;  // 63 x_c^3 / (4 slope)
    double threshold;    // x_c + coefficient * eps^4
};

/// Fourth-order shift of the Steane threshold by off-diagonal terms of size eps.
ShiftedThreshold steane_shifted_threshold(double eps);
/// The leading-order coefficient, read off the X-row polynomial of `map`
/// as 3 * |coef(a^3 b^4)| * x_c^3 / slope.
ShiftedThreshold shifted_threshold(const CodingMap &map, double eps);

/// Iterates a reduced row until it settles. Returns whether the row reaches
/// the identity row [0,1,0,0] (b within tol of 1).
bool reduced_row_converges(const ReducedRowMap &f, Vec4 v, size_t max_iter = 200, double tol = 1e-10);

/// Smallest a in [lo, hi] for which the row with main entry a and the other
/// three entries equal to eps converges, by bisection. Assumes lo fails and
/// hi converges; throws std::invalid_argument otherwise.
double empirical_shifted_boundary(
    const ReducedRowMap &f, double eps, double lo = 0.5, double hi = 1.0, double tol = 1e-10);

/// Iterates the reduced row map and follows every coordinate that starts with
/// magnitude below x_c. With all four coordinates non-zero such a coordinate
/// can grow for a step before it collapses, so monotonicity is reported apart
/// from the limit.
struct DecayReport {
    bool small_coordinates_decay = true;  // reach_zero && monotone
    bool reach_zero = true;
    bool monotone = true;
    size_t survivors = 0;  // coordinates with magnitude above 1e-6 at the end
    Vec4 final{};
};
DecayReport small_coordinates_decay(const ReducedRowMap &f, const Vec4 &v, double x_c, size_t max_iter = 200);

}  // namespace qecdyn

#endif
