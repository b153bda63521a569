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

#ifndef QECDYN_CHANNEL_H
#define QECDYN_CHANNEL_H

#include <array>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qecdyn/pauli.h"

namespace qecdyn {

using Vec3 = std::array<double, 3>;
using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Default slack for the channel inequalities.
inline constexpr double kChannelTolerance = 1e-10;

/// Single-qubit channel as a real 4x4 Pauli transfer matrix indexed (I,X,Y,Z)
/// on both axes. Entry (r, c) is the r-component of the image of Pauli c.
///
/// The first row is always exactly (1, 0, 0, 0).
class Channel {
   public:
    /// The identity channel.
    Channel();
    /// Throws std::invalid_argument unless the first row is exactly (1,0,0,0).
    explicit Channel(const Matrix4 &matrix);

    static Channel identity() {
        return Channel();
    }
    static Channel diagonal(double x, double y, double z);
    /// Builds a channel from the 12 free entries, rows X, Y, Z in order.
    static Channel from_free_parameters(const std::array<double, 12> &params);

    double operator()(Letter row, Letter col) const {
        return m_[index_of(row)][index_of(col)];
    }
    double at(size_t row, size_t col) const {
        return m_[row][col];
    }
    const Matrix4 &matrix() const {
        return m_;
    }
    std::array<double, 12> free_parameters() const;
    /// The non-unital vector (N_XI, N_YI, N_ZI).
    Vec3 nonunital() const;
    Vec3 diagonal_entries() const;
    bool is_diagonal(double tol = 0.0) const;

    bool operator==(const Channel &other) const = default;

   private:
    Matrix4 m_;
};

/// Diagonal channel [x, y, z] = diag(1, x, y, z). Always inside the
/// tetrahedron of diagonal channels, up to kChannelTolerance.
class DiagonalChannel {
   public:
    DiagonalChannel() = default;
    /// Throws std::invalid_argument when (x, y, z) lies outside the tetrahedron.
    DiagonalChannel(double x, double y, double z, double tol = kChannelTolerance);
    explicit DiagonalChannel(const Vec3 &xyz, double tol = kChannelTolerance)
        : DiagonalChannel(xyz[0], xyz[1], xyz[2], tol) {
    }

    double x() const {
        return v_[0];
    }
    double y() const {
        return v_[1];
    }
    double z() const {
        return v_[2];
    }
    const Vec3 &values() const {
        return v_;
    }
    Channel to_channel() const {
        return Channel::diagonal(v_[0], v_[1], v_[2]);
    }
    /// Throws std::invalid_argument if `c` has nonzero off-diagonal entries.
    static DiagonalChannel from_channel(const Channel &c, double tol = kChannelTolerance);

    bool operator==(const DiagonalChannel &other) const = default;

   private:
    Vec3 v_{1.0, 1.0, 1.0};
};

/// Largest violation of the four tetrahedron inequalities; <= 0 inside.
double tetrahedron_excess(const Vec3 &xyz);
bool in_tetrahedron(const Vec3 &xyz, double tol = kChannelTolerance);

/// Pauli channel with exclusive error probabilities.
DiagonalChannel from_pauli_probs(double p_x, double p_y, double p_z);

struct Violation {
    std::string constraint;
    double excess;  // lhs - rhs of the violated inequality
};

struct ValidityReport {
    std::vector<Violation> violations;
    bool ok() const {
        return violations.empty();
    }
    std::string str() const;
};

/// Checks the necessary conditions on a single-qubit transfer matrix: row norms,
/// the per-row bound against |N_sI|, the +/- column bounds, and membership of
/// the diagonal (N_XX, N_YY, N_ZZ) in the tetrahedron.
///
/// Throws std::invalid_argument when the first row is not (1,0,0,0).
ValidityReport validate(const Matrix4 &m, double tol = kChannelTolerance);
ValidityReport validate(const Channel &c, double tol = kChannelTolerance);

/// True iff at least two of N_XX, N_YY, N_ZZ are within tol of 1.
bool two_point_check(const Channel &c, double tol);

Channel compose(const Channel &a, const Channel &b);
DiagonalChannel compose(const DiagonalChannel &a, const DiagonalChannel &b);

double distance_to_identity(const Channel &c);
double distance_to_identity(const DiagonalChannel &c);

using AnyChannel = std::variant<DiagonalChannel, Channel>;

nlohmann::json to_json(const Channel &c);
nlohmann::json to_json(const DiagonalChannel &c);
/// Accepts {"diag":[x,y,z]}, {"ptm":[[..4..] x4]}, a bare [x,y,z] or a bare
/// 4x4 array.
AnyChannel channel_from_json(const nlohmann::json &j);

std::string csv_header(const Channel &);
std::string csv_header(const DiagonalChannel &);
std::string csv_row(const Channel &c);
std::string csv_row(const DiagonalChannel &c);

/// Formats with 9 significant digits.
std::string format_number(double v);
/// Rounds to 9 significant digits, for JSON emitters.
double round_sig9(double v);

std::ostream &operator<<(std::ostream &out, const Channel &c);
std::ostream &operator<<(std::ostream &out, const DiagonalChannel &c);

}  // namespace qecdyn

#endif
