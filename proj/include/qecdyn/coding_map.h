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

#ifndef QECDYN_CODING_MAP_H
#define QECDYN_CODING_MAP_H

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qecdyn/channel.h"
#include "qecdyn/code.h"

namespace qecdyn {

using Vec4 = std::array<double, 4>;

/// One column of the encoding or decoding matrix: Pauli strings with
/// rational coefficients numerator / denominator.
struct SparseColumn {
    struct Term {
        PauliString op;
        int64_t numerator;
    };
    std::vector<Term> terms;
    int64_t denominator = 1;

    double coefficient(size_t i) const {
        return static_cast<double>(terms[i].numerator) / static_cast<double>(denominator);
    }
};

/// Polynomial in a fixed number of variables with rational coefficients over a
/// common power-of-two denominator.
template <size_t Vars>
struct Polynomial {
    struct Monomial {
        std::array<unsigned, Vars> exponents;
        int64_t numerator;
    };
    std::vector<Monomial> terms;
    int64_t denominator = 1;
    unsigned max_degree = 0;

    double operator()(const std::array<double, Vars> &v) const;
};

/// Diagonal entry of the coding map in x = N_XX, y = N_YY, z = N_ZZ.
using DiagonalPolynomial = Polynomial<3>;
/// Entry G_{R c} as a function of the row (N_RI, N_RX, N_RY, N_RZ).
using RowPolynomial = Polynomial<4>;

/// Conditional (non trace preserving) map for a single syndrome.
struct QuasiChannel {
    Matrix4 matrix;
    /// Probability of the syndrome for a logical state with Bloch vector r is
    /// G_II + G_IX r_x + G_IY r_y + G_IZ r_z.
    double probability(const Vec3 &bloch) const {
        return matrix[0][0] + matrix[0][1] * bloch[0] + matrix[0][2] * bloch[1] + matrix[0][3] * bloch[2];
    }
};

/// The coding map of a single stabilizer code.
///
/// Encoder column E_s holds s̄·t for every stabilizer element t, weighted by the
/// sign of the product. Decoder column D_s holds the same strings weighted by
/// that sign times the average over the recovery table of their commutation
/// with each recovery operator; zero entries are dropped.
class CodingMapEvaluator {
   public:
    explicit CodingMapEvaluator(StabilizerCode code);

    const StabilizerCode &code() const {
        return code_;
    }
    const SparseColumn &encoder(Letter sigma) const {
        return encoder_[index_of(sigma)];
    }
    const SparseColumn &decoder(Letter sigma) const {
        return decoder_[index_of(sigma)];
    }
    const DiagonalPolynomial &diagonal_polynomial(Letter sigma) const;

    /// Contracts the columns against N on every qubit. No validity checks.
    Matrix4 apply_general(const Matrix4 &n) const;
    Vec3 evaluate_diagonal(const Vec3 &xyz) const;

    /// Decoder column restricted to the recovery operator of one syndrome.
    SparseColumn syndrome_decoder(Letter sigma, const Syndrome &beta) const;
    QuasiChannel syndrome_quasi_channel(const Channel &n, const Syndrome &beta) const;

    /// G_{row, col} as a polynomial in the entries of row `row` of N. Throws
    /// UnsupportedError unless every decoder string for `row` uses only the
    /// letters I and `row` (true for the X and Z rows of CSS codes).
    RowPolynomial row_polynomial(Letter row, Letter col) const;

   private:
    Matrix4 contract(const std::array<const SparseColumn *, 4> &decoder, const Matrix4 &n) const;

    StabilizerCode code_;
    std::array<SparseColumn, 4> encoder_;
    std::array<SparseColumn, 4> decoder_;
    std::array<DiagonalPolynomial, 4> diagonal_;
};

/// A composition of coding maps, outermost level first. The level listed
/// last sees the physical noise and is applied first.
class CodingMap {
   public:
    /// Largest code length for which the general contraction is allowed.
    static constexpr size_t kMaxGeneralQubits = 10;

    explicit CodingMap(StabilizerCode code);
    CodingMap(std::string name, std::vector<std::shared_ptr<const CodingMapEvaluator>> levels);

    const std::string &name() const {
        return name_;
    }
    const std::vector<std::shared_ptr<const CodingMapEvaluator>> &levels() const {
        return levels_;
    }
    bool is_composite() const {
        return levels_.size() > 1;
    }
    bool is_css() const;
    /// The single level of a non-composite map; throws UnsupportedError otherwise.
    const CodingMapEvaluator &single() const;

    /// Unchecked general map. Throws UnsupportedError when a level has n > 10.
    Matrix4 apply_general(const Matrix4 &n) const;
    Channel apply_general(const Channel &n) const;
    /// Unchecked diagonal polynomials.
    Vec3 evaluate_diagonal(const Vec3 &xyz) const;
    /// Throws std::logic_error when an intermediate or final result leaves the
    /// tetrahedron, which signals an inconsistent code or recovery table.
    DiagonalChannel apply_diagonal(const DiagonalChannel &c) const;

   private:
    std::string name_;
    std::vector<std::shared_ptr<const CodingMapEvaluator>> levels_;
};

/// Resolves a built-in code name, a composite tag (shor9, gshor15, gshor25),
/// a code file path, or an expression "A*B*..." meaning A after B after ....
CodingMap resolve_coding_map(std::string_view expr);

/// Coding map followed by gate noise: (1 - eps) * map(c) + eps * diag(1,0,0,0).
Channel faulty_map(const CodingMap &map, const Channel &c, double eps);
DiagonalChannel faulty_map(const CodingMap &map, const DiagonalChannel &c, double eps);
Vec3 faulty_map_raw(const CodingMap &map, const Vec3 &xyz, double eps);

/// Row of a CSS channel that the reduced maps act on.
enum class RowAxis { X, Z };

/// Applies a CSS coding map to one row. For RowAxis::X the layout is
/// [N_XI, N_XX, N_XZ, N_XY]; for RowAxis::Z it is [N_ZI, N_ZZ, N_ZX, N_ZY].
/// Evaluated through the general contraction with the other rows zeroed.
/// Throws UnsupportedError for non-CSS maps.
Vec4 css_reduced_map(const CodingMap &map, RowAxis axis, const Vec4 &v);

/// Same map as css_reduced_map, evaluated from precomputed row polynomials.
/// Used for dense scans.
class ReducedRowMap {
   public:
    ReducedRowMap(const CodingMap &map, RowAxis axis);
    Vec4 operator()(const Vec4 &v) const;
    RowAxis axis() const {
        return axis_;
    }

   private:
    RowAxis axis_;
    // levels_[i][c] maps the natural-order row (N_RI, N_RX, N_RY, N_RZ) to G_{R c}.
    std::vector<std::array<RowPolynomial, 4>> levels_;
};

Letter row_letter(RowAxis axis);
/// Converts between the reduced layout and natural (I, X, Y, Z) order.
Vec4 reduced_to_natural(RowAxis axis, const Vec4 &v);
Vec4 natural_to_reduced(RowAxis axis, const Vec4 &v);

}  // namespace qecdyn

#endif
