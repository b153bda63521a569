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

#include "qecdyn/pauli.h"

#include <bit>
#include <stdexcept>

namespace qecdyn {

namespace {

uint64_t mask_for(size_t num_qubits) {
    return num_qubits == 64 ? ~uint64_t{0} : (uint64_t{1} << num_qubits) - 1;
}

void check_same_size(const PauliString &p, const PauliString &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw std::invalid_argument(
            "Pauli strings have different lengths: " + std::to_string(p.num_qubits()) + " vs " +
            std::to_string(q.num_qubits()));
    }
}

}  // namespace

char letter_char(Letter letter) {
    return "IXYZ"[index_of(letter)];
}

Letter letter_from_char(char c) {
    switch (c) {
        case 'I':
            return Letter::I;
        case 'X':
            return Letter::X;
        case 'Y':
            return Letter::Y;
        case 'Z':
            return Letter::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

PauliString PauliString::identity(size_t num_qubits) {
    return from_bits(num_qubits, 0, 0);
}

PauliString PauliString::from_bits(size_t num_qubits, uint64_t xbits, uint64_t zbits, bool negative) {
    if (num_qubits == 0) {
        throw std::invalid_argument("a Pauli string needs at least one qubit");
    }
    if (num_qubits > kMaxQubits) {
        throw std::invalid_argument("at most " + std::to_string(kMaxQubits) + " qubits are supported");
    }
    uint64_t mask = mask_for(num_qubits);
    if ((xbits & ~mask) || (zbits & ~mask)) {
        throw std::invalid_argument("Pauli bit mask has bits beyond the qubit count");
    }
    PauliString result;
    result.num_qubits_ = num_qubits;
    result.xbits_ = xbits;
    result.zbits_ = zbits;
    result.negative_ = negative;
    return result;
}

PauliString PauliString::single(size_t num_qubits, size_t qubit, Letter letter) {
    if (qubit >= num_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    uint64_t bit = uint64_t{1} << qubit;
    bool x = letter == Letter::X || letter == Letter::Y;
    bool z = letter == Letter::Z || letter == Letter::Y;
    return from_bits(num_qubits, x ? bit : 0, z ? bit : 0);
}

PauliString PauliString::from_text(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty Pauli string");
    }
    if (text.size() > kMaxQubits) {
        throw std::invalid_argument("Pauli string longer than " + std::to_string(kMaxQubits) + " qubits");
    }
    uint64_t xbits = 0;
    uint64_t zbits = 0;
    for (size_t q = 0; q < text.size(); q++) {
        Letter letter = letter_from_char(text[q]);
        uint64_t bit = uint64_t{1} << q;
        if (letter == Letter::X || letter == Letter::Y) {
            xbits |= bit;
        }
        if (letter == Letter::Z || letter == Letter::Y) {
            zbits |= bit;
        }
    }
    return from_bits(text.size(), xbits, zbits, negative);
}

Letter PauliString::letter(size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw std::out_of_range("qubit index out of range");
    }
    unsigned x = (xbits_ >> qubit) & 1;
    unsigned z = (zbits_ >> qubit) & 1;
    if (x && z) {
        return Letter::Y;
    }
    if (x) {
        return Letter::X;
    }
    return z ? Letter::Z : Letter::I;
}

size_t PauliString::weight() const {
    return std::popcount(xbits_ | zbits_);
}

PauliString PauliString::negated() const {
    PauliString result = *this;
    result.negative_ = !negative_;
    return result;
}

PauliString PauliString::unsigned_copy() const {
    PauliString result = *this;
    result.negative_ = false;
    return result;
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(num_qubits_ + 1);
    if (negative_) {
        out.push_back('-');
    }
    for (size_t q = 0; q < num_qubits_; q++) {
        out.push_back(letter_char(letter(q)));
    }
    return out;
}

PauliString multiply(const PauliString &p, const PauliString &q, int extra_i_power) {
    check_same_size(p, q);
    // Each letter is written as i^(x*z) X^x Z^z, so Y = iXZ. Moving Z^z1 past
    // X^x2 costs (-1)^(z1*x2); the product's own Y letters absorb i^(x3*z3).
    uint64_t x3 = p.xbits() ^ q.xbits();
    uint64_t z3 = p.zbits() ^ q.zbits();
    int log_i = std::popcount(p.xbits() & p.zbits()) + std::popcount(q.xbits() & q.zbits()) +
                2 * std::popcount(p.zbits() & q.xbits()) - std::popcount(x3 & z3);
    log_i += extra_i_power;
    log_i += p.negative() ? 2 : 0;
    log_i += q.negative() ? 2 : 0;
    log_i = ((log_i % 4) + 4) % 4;
    if (log_i & 1) {
        throw std::domain_error("Pauli product " + p.str() + " * " + q.str() + " carries an imaginary phase");
    }
    return PauliString::from_bits(p.num_qubits(), x3, z3, log_i == 2);
}

bool commutes(const PauliString &p, const PauliString &q) {
    check_same_size(p, q);
    int anti = std::popcount(p.xbits() & q.zbits()) + std::popcount(p.zbits() & q.xbits());
    return (anti & 1) == 0;
}

int commute_sign(const PauliString &p, const PauliString &q) {
    int s = commutes(p, q) ? 1 : -1;
    if (p.negative() != q.negative()) {
        s = -s;
    }
    return s;
}

size_t letter_weight(const PauliString &p, Letter letter) {
    uint64_t x = p.xbits();
    uint64_t z = p.zbits();
    uint64_t all = (p.num_qubits() == 64) ? ~uint64_t{0} : (uint64_t{1} << p.num_qubits()) - 1;
    switch (letter) {
        case Letter::I:
            return std::popcount(~(x | z) & all);
        case Letter::X:
            return std::popcount(x & ~z);
        case Letter::Y:
            return std::popcount(x & z);
        case Letter::Z:
            return std::popcount(z & ~x);
    }
    return 0;
}

}  // namespace qecdyn
