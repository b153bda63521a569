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

#ifndef QECDYN_PAULI_H
#define QECDYN_PAULI_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace qecdyn {

/// Single-qubit Pauli letter. The numeric value doubles as the row/column
/// index into a Pauli transfer matrix.
enum class Letter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Letter, 4> kAllLetters = {Letter::I, Letter::X, Letter::Y, Letter::Z};
inline constexpr std::array<Letter, 3> kNonIdentityLetters = {Letter::X, Letter::Y, Letter::Z};

char letter_char(Letter letter);
Letter letter_from_char(char c);
inline constexpr size_t index_of(Letter letter) {
    return static_cast<size_t>(letter);
}

/// A signed n-qubit Pauli operator (+/-) stored as two symplectic bit masks.
///
/// Qubit q carries X component `(xbits >> q) & 1` and Z component
/// `(zbits >> q) & 1`; both set means Y. Only real signs are representable;
/// products that would carry a factor of +/-i are rejected by `multiply`.
class PauliString {
   public:
    static constexpr size_t kMaxQubits = 63;

    PauliString() = default;

    static PauliString identity(size_t num_qubits);
    static PauliString from_bits(size_t num_qubits, uint64_t xbits, uint64_t zbits, bool negative = false);
    static PauliString single(size_t num_qubits, size_t qubit, Letter letter);
    /// Parses an optional leading '-' (or '+') followed by letters from {I,X,Y,Z}.
    static PauliString from_text(std::string_view text);

    size_t num_qubits() const {
        return num_qubits_;
    }
    uint64_t xbits() const {
        return xbits_;
    }
    uint64_t zbits() const {
        return zbits_;
    }
    bool negative() const {
        return negative_;
    }
    int sign() const {
        return negative_ ? -1 : +1;
    }

    Letter letter(size_t qubit) const;
    size_t weight() const;
    bool is_identity_letters() const {
        return (xbits_ | zbits_) == 0;
    }
    bool same_letters(const PauliString &other) const {
        return num_qubits_ == other.num_qubits_ && xbits_ == other.xbits_ && zbits_ == other.zbits_;
    }

    PauliString negated() const;
    PauliString unsigned_copy() const;

    std::string str() const;

    bool operator==(const PauliString &other) const = default;

   private:
    size_t num_qubits_ = 0;
    uint64_t xbits_ = 0;
    uint64_t zbits_ = 0;
    bool negative_ = false;
};

/// Returns i^extra_i_power * p * q.
///
/// Throws std::invalid_argument on a qubit-count mismatch and std::domain_error
/// when the resulting phase is +/-i (the product is not Hermitian).
PauliString multiply(const PauliString &p, const PauliString &q, int extra_i_power = 0);

/// +1 when p and q commute, -1 when they anticommute, with each negative sign
/// on p or q flipping the result once more.
int commute_sign(const PauliString &p, const PauliString &q);

/// Sign-independent commutation test.
bool commutes(const PauliString &p, const PauliString &q);

size_t letter_weight(const PauliString &p, Letter letter);

}  // namespace qecdyn

#endif
