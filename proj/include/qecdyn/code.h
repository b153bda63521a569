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

#ifndef QECDYN_CODE_H
#define QECDYN_CODE_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qecdyn/pauli.h"

namespace qecdyn {

/// Measurement outcome of the n-k generators. Bit i is 1 when the error
/// anticommutes with generator i. The text form lists generator 0 first.
struct Syndrome {
    uint64_t bits = 0;
    size_t length = 0;

    std::string str() const;
    static Syndrome from_text(std::string_view text);
    bool operator==(const Syndrome &other) const = default;
};

/// An [[n,1,d]] stabilizer code with a fixed recovery table.
///
/// Construction checks that the generators commute and are independent, that
/// the logicals commute with S and anticommute with each other, and that every
/// recovery entry reproduces its syndrome. Immutable afterwards.
class StabilizerCode {
   public:
    /// Largest supported n-k; the stabilizer group is enumerated explicitly.
    static constexpr size_t kMaxChecks = 20;

    /// `recovery` may list operators in any order, one per syndrome. Syndromes
    /// left uncovered are filled by min_weight_recovery.
    StabilizerCode(
        std::string name,
        std::vector<PauliString> generators,
        PauliString logical_x,
        PauliString logical_z,
        const std::vector<PauliString> &recovery = {});

    const std::string &name() const {
        return name_;
    }
    size_t n() const {
        return n_;
    }
    size_t k() const {
        return 1;
    }
    size_t num_checks() const {
        return generators_.size();
    }
    const std::vector<PauliString> &generators() const {
        return generators_;
    }
    const PauliString &logical_x() const {
        return logical_x_;
    }
    const PauliString &logical_z() const {
        return logical_z_;
    }
    /// i * X̄ * Z̄, with its real sign.
    const PauliString &logical_y() const {
        return logical_y_;
    }
    const PauliString &logical(Letter letter) const;

    Syndrome syndrome(const PauliString &e) const;
    /// Recovery table indexed by syndrome bits.
    const std::vector<PauliString> &recovery() const {
        return recovery_;
    }
    const PauliString &recovery(const Syndrome &s) const;
    /// All 2^(n-k) signed products of generators. Entry j is the product of the
    /// generators selected by the bits of j.
    const std::vector<PauliString> &stabilizer_elements() const {
        return elements_;
    }

    /// Minimal weight of an element of C(S) that is not in S (up to sign).
    size_t distance() const;
    /// Minimal weight of a non-identity stabilizer element.
    size_t min_stabilizer_weight() const;
    /// Every generator is X-only or Z-only.
    bool is_css() const;
    /// CSS, and every X-only and Z-only stabilizer element has weight divisible by 4.
    bool is_doubly_even() const;
    bool in_stabilizer(const PauliString &p) const;

   private:
    std::string name_;
    size_t n_;
    std::vector<PauliString> generators_;
    PauliString logical_x_;
    PauliString logical_z_;
    PauliString logical_y_;
    std::vector<PauliString> elements_;
    std::vector<PauliString> recovery_;
    mutable size_t distance_ = 0;
};

/// For every syndrome, the lowest-weight Pauli producing it, ties broken by
/// text order with I < X < Y < Z. Throws std::invalid_argument when some
/// syndrome cannot be reached.
std::vector<PauliString> min_weight_recovery(const std::vector<PauliString> &generators);

/// Repetition code against X errors, generators Z_0 Z_i.
StabilizerCode bit_flip_code(size_t n);
/// Repetition code against Z errors, generators X_0 X_i.
StabilizerCode phase_flip_code(size_t n);
/// The [[7,1,3]] code with the standard 64-entry table (identity, single
/// X/Y/Z errors, and X_a Z_b for a != b).
StabilizerCode steane_code();
/// The [[5,1,3]] code with cyclic XZZXI generators.
StabilizerCode five_qubit_code();

/// Names understood by builtin_code: "bf<n>", "pf<n>", "bit_flip(<n>)",
/// "phase_flip(<n>)", "steane7", "five_qubit". Throws std::invalid_argument
/// on unknown names.
StabilizerCode builtin_code(std::string_view name);
bool is_builtin_code_name(std::string_view name);

/// Line-oriented code definition: `n`, `k`, `gen`, `logX`, `logZ` and optional
/// `rec <bits> <pauli>` lines. '#' starts a comment.
StabilizerCode parse_code_file(std::istream &in, std::string name);
StabilizerCode load_code_file(const std::string &path);
std::string code_file_text(const StabilizerCode &code);

}  // namespace qecdyn

#endif
