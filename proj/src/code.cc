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

#include "qecdyn/code.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qecdyn/errors.h"

namespace qecdyn {

namespace {

uint64_t syndrome_bits(const std::vector<PauliString> &generators, const PauliString &e) {
    uint64_t bits = 0;
    for (size_t i = 0; i < generators.size(); i++) {
        if (!commutes(generators[i], e)) {
            bits |= uint64_t{1} << i;
        }
    }
    return bits;
}

/// Calls `visit` on every weight-w string of length n, in text order with
/// I < X < Y < Z. Stops early when `visit` returns false.
bool for_each_of_weight(size_t n, size_t w, const std::function<bool(const PauliString &)> &visit) {
    uint64_t xs = 0;
    uint64_t zs = 0;
    std::function<bool(size_t, size_t)> rec = [&](size_t pos, size_t remaining) -> bool {
        if (pos == n) {
            return remaining != 0 || visit(PauliString::from_bits(n, xs, zs));
        }
        uint64_t bit = uint64_t{1} << pos;
        if (n - pos - 1 >= remaining && !rec(pos + 1, remaining)) {
            return false;
        }
        if (remaining == 0) {
            return true;
        }
        for (int letter = 1; letter <= 3; letter++) {
            bool x = letter == 1 || letter == 2;
            bool z = letter == 2 || letter == 3;
            xs ^= x ? bit : 0;
            zs ^= z ? bit : 0;
            bool go_on = rec(pos + 1, remaining - 1);
            xs ^= x ? bit : 0;
            zs ^= z ? bit : 0;
            if (!go_on) {
                return false;
            }
        }
        return true;
    };
    return rec(0, w);
}

PauliString repeated(size_t n, Letter letter) {
    std::string text(n, letter_char(letter));
    return PauliString::from_text(text);
}

PauliString two_letters(size_t n, size_t a, Letter la, size_t b, Letter lb) {
    std::string text(n, 'I');
    text[a] = letter_char(la);
    text[b] = letter_char(lb);
    return PauliString::from_text(text);
}

}  // namespace

std::string Syndrome::str() const {
    std::string out;
    for (size_t i = 0; i < length; i++) {
        out.push_back((bits >> i) & 1 ? '1' : '0');
    }
    return out;
}

Syndrome Syndrome::from_text(std::string_view text) {
    if (text.size() > 63) {
        throw std::invalid_argument("syndrome longer than 63 bits");
    }
    Syndrome s{0, text.size()};
    for (size_t i = 0; i < text.size(); i++) {
        if (text[i] == '1') {
            s.bits |= uint64_t{1} << i;
        } else if (text[i] != '0') {
            throw std::invalid_argument("syndrome text must consist of 0 and 1: '" + std::string(text) + "'");
        }
    }
    return s;
}

std::vector<PauliString> min_weight_recovery(const std::vector<PauliString> &generators) {
    if (generators.empty()) {
        throw std::invalid_argument("a code needs at least one generator");
    }
    size_t n = generators.front().num_qubits();
    size_t m = generators.size();
    if (m > StabilizerCode::kMaxChecks) {
        throw std::invalid_argument("too many generators for an explicit recovery table");
    }
    size_t num_syndromes = size_t{1} << m;
    std::vector<std::optional<PauliString>> table(num_syndromes);
    size_t filled = 0;
    for (size_t w = 0; w <= n && filled < num_syndromes; w++) {
        for_each_of_weight(n, w, [&](const PauliString &e) {
            uint64_t s = syndrome_bits(generators, e);
            if (!table[s]) {
                table[s] = e;
                filled++;
            }
            return filled < num_syndromes;
        });
    }
    if (filled < num_syndromes) {
        throw std::invalid_argument("some syndromes are unreachable; the generators are inconsistent");
    }
    std::vector<PauliString> out;
    out.reserve(num_syndromes);
    for (auto &entry : table) {
        out.push_back(*entry);
    }
    return out;
}

StabilizerCode::StabilizerCode(
    std::string name,
    std::vector<PauliString> generators,
    PauliString logical_x,
    PauliString logical_z,
    const std::vector<PauliString> &recovery)
    : name_(std::move(name)),
      n_(logical_x.num_qubits()),
      generators_(std::move(generators)),
      logical_x_(std::move(logical_x)),
      logical_z_(std::move(logical_z)) {
    if (n_ == 0) {
        throw std::invalid_argument("logical operators must be set");
    }
    if (generators_.size() + 1 != n_) {
        throw std::invalid_argument(
            "an [[n,1]] code needs n-1 generators; got " + std::to_string(generators_.size()) + " for n = " +
            std::to_string(n_));
    }
    if (generators_.size() > kMaxChecks) {
        throw std::invalid_argument("at most " + std::to_string(kMaxChecks) + " generators are supported");
    }
    for (const auto &g : generators_) {
        if (g.num_qubits() != n_) {
            throw std::invalid_argument("generator " + g.str() + " has the wrong length");
        }
    }
    if (logical_z_.num_qubits() != n_) {
        throw std::invalid_argument("logical Z has the wrong length");
    }
    for (size_t i = 0; i < generators_.size(); i++) {
        for (size_t j = i + 1; j < generators_.size(); j++) {
            if (!commutes(generators_[i], generators_[j])) {
                throw std::invalid_argument(
                    "generators " + generators_[i].str() + " and " + generators_[j].str() + " anticommute");
            }
        }
        if (!commutes(generators_[i], logical_x_) || !commutes(generators_[i], logical_z_)) {
            throw std::invalid_argument("logical operators must commute with generator " + generators_[i].str());
        }
    }
    if (commutes(logical_x_, logical_z_)) {
        throw std::invalid_argument("logical X and logical Z must anticommute");
    }
    logical_y_ = multiply(logical_x_, logical_z_, 1);

    size_t m = generators_.size();
    elements_.reserve(size_t{1} << m);
    elements_.push_back(PauliString::identity(n_));
    for (size_t j = 1; j < (size_t{1} << m); j++) {
        size_t low = std::countr_zero(j);
        elements_.push_back(multiply(elements_[j & (j - 1)], generators_[low]));
    }
    std::vector<std::pair<uint64_t, uint64_t>> keys;
    keys.reserve(elements_.size());
    for (const auto &e : elements_) {
        keys.emplace_back(e.xbits(), e.zbits());
    }
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
        throw std::invalid_argument("generators are not independent");
    }

    std::vector<std::optional<PauliString>> table(elements_.size());
    for (const auto &r : recovery) {
        if (r.num_qubits() != n_) {
            throw std::invalid_argument("recovery operator " + r.str() + " has the wrong length");
        }
        uint64_t s = syndrome_bits(generators_, r);
        if (table[s]) {
            throw std::invalid_argument(
                "recovery operators " + table[s]->str() + " and " + r.str() + " share syndrome " +
                Syndrome{s, m}.str());
        }
        table[s] = r;
    }
    bool missing = std::any_of(table.begin(), table.end(), [](const auto &t) { return !t.has_value(); });
    std::vector<PauliString> fallback;
    if (missing) {
        fallback = min_weight_recovery(generators_);
    }
    recovery_.reserve(table.size());
    for (size_t s = 0; s < table.size(); s++) {
        recovery_.push_back(table[s] ? *table[s] : fallback[s]);
    }

    for (size_t w = 1; w <= n_ && distance_ == 0; w++) {
        for_each_of_weight(n_, w, [&](const PauliString &e) {
            if (syndrome_bits(generators_, e) == 0 && !in_stabilizer(e)) {
                distance_ = w;
                return false;
            }
            return true;
        });
    }
}

const PauliString &StabilizerCode::logical(Letter letter) const {
    static const PauliString none;
    switch (letter) {
        case Letter::X:
            return logical_x_;
        case Letter::Y:
            return logical_y_;
        case Letter::Z:
            return logical_z_;
        case Letter::I:
            return elements_.front();
    }
    return none;
}

Syndrome StabilizerCode::syndrome(const PauliString &e) const {
    if (e.num_qubits() != n_) {
        throw std::invalid_argument("error " + e.str() + " has the wrong length for code " + name_);
    }
    return {syndrome_bits(generators_, e), generators_.size()};
}

const PauliString &StabilizerCode::recovery(const Syndrome &s) const {
    if (s.length != generators_.size() || s.bits >= recovery_.size()) {
        throw std::invalid_argument("syndrome " + s.str() + " does not belong to code " + name_);
    }
    return recovery_[s.bits];
}

bool StabilizerCode::in_stabilizer(const PauliString &p) const {
    return std::any_of(elements_.begin(), elements_.end(), [&](const PauliString &s) { return s.same_letters(p); });
}

size_t StabilizerCode::distance() const {
    return distance_;
}

size_t StabilizerCode::min_stabilizer_weight() const {
    size_t best = n_;
    for (size_t j = 1; j < elements_.size(); j++) {
        best = std::min(best, elements_[j].weight());
    }
    return best;
}

bool StabilizerCode::is_css() const {
    return std::all_of(generators_.begin(), generators_.end(), [](const PauliString &g) {
        return g.xbits() == 0 || g.zbits() == 0;
    });
}

bool StabilizerCode::is_doubly_even() const {
    if (!is_css()) {
        return false;
    }
    for (const auto &e : elements_) {
        bool pure = e.xbits() == 0 || e.zbits() == 0;
        if (pure && e.weight() % 4 != 0) {
            return false;
        }
    }
    return true;
}

StabilizerCode bit_flip_code(size_t n) {
    if (n < 2 || n > StabilizerCode::kMaxChecks + 1) {
        throw std::invalid_argument("bit flip code length must lie in [2, 21]");
    }
    std::vector<PauliString> gens;
    for (size_t i = 1; i < n; i++) {
        gens.push_back(two_letters(n, 0, Letter::Z, i, Letter::Z));
    }
    // Majority vote: flip the smaller side, keeping qubit 0 unflipped on ties.
    std::vector<PauliString> rec;
    uint64_t all = (uint64_t{1} << n) - 1;
    for (uint64_t s = 0; s < (uint64_t{1} << (n - 1)); s++) {
        uint64_t flips = s << 1;
        uint64_t other = all ^ flips;
        if (std::popcount(other) < std::popcount(flips)) {
            flips = other;
        }
        rec.push_back(PauliString::from_bits(n, flips, 0));
    }
    PauliString z_bar = n % 2 ? repeated(n, Letter::Z) : PauliString::single(n, 0, Letter::Z);
    return StabilizerCode("bf" + std::to_string(n), std::move(gens), repeated(n, Letter::X), z_bar, rec);
}

StabilizerCode phase_flip_code(size_t n) {
    if (n < 2 || n > StabilizerCode::kMaxChecks + 1) {
        throw std::invalid_argument("phase flip code length must lie in [2, 21]");
    }
    std::vector<PauliString> gens;
    for (size_t i = 1; i < n; i++) {
        gens.push_back(two_letters(n, 0, Letter::X, i, Letter::X));
    }
    std::vector<PauliString> rec;
    uint64_t all = (uint64_t{1} << n) - 1;
    for (uint64_t s = 0; s < (uint64_t{1} << (n - 1)); s++) {
        uint64_t flips = s << 1;
        uint64_t other = all ^ flips;
        if (std::popcount(other) < std::popcount(flips)) {
            flips = other;
        }
        rec.push_back(PauliString::from_bits(n, 0, flips));
    }
    PauliString x_bar = n % 2 ? repeated(n, Letter::X) : PauliString::single(n, 0, Letter::X);
    return StabilizerCode("pf" + std::to_string(n), std::move(gens), x_bar, repeated(n, Letter::Z), rec);
}

StabilizerCode steane_code() {
    std::vector<PauliString> gens;
    for (const char *g : {"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"}) {
        gens.push_back(PauliString::from_text(g));
    }
    std::vector<PauliString> rec{PauliString::identity(7)};
    for (Letter letter : kNonIdentityLetters) {
        for (size_t q = 0; q < 7; q++) {
            rec.push_back(PauliString::single(7, q, letter));
        }
    }
    for (size_t a = 0; a < 7; a++) {
        for (size_t b = 0; b < 7; b++) {
            if (a != b) {
                rec.push_back(two_letters(7, a, Letter::X, b, Letter::Z));
            }
        }
    }
    return StabilizerCode("steane7", std::move(gens), repeated(7, Letter::X), repeated(7, Letter::Z), rec);
}

StabilizerCode five_qubit_code() {
    std::vector<PauliString> gens;
    for (const char *g : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}) {
        gens.push_back(PauliString::from_text(g));
    }
    return StabilizerCode("five_qubit", std::move(gens), repeated(5, Letter::X), repeated(5, Letter::Z));
}

namespace {

std::optional<size_t> parse_size(std::string_view text) {
    size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        return std::nullopt;
    }
    return value;
}

/// Matches "<prefix><n>" or "<long>(<n>)".
std::optional<size_t> family_size(std::string_view name, std::string_view prefix, std::string_view long_name) {
    if (name.starts_with(prefix)) {
        return parse_size(name.substr(prefix.size()));
    }
    if (name.starts_with(long_name) && name.size() > long_name.size() + 2 && name[long_name.size()] == '(' &&
        name.back() == ')') {
        return parse_size(name.substr(long_name.size() + 1, name.size() - long_name.size() - 2));
    }
    return std::nullopt;
}

}  // namespace

bool is_builtin_code_name(std::string_view name) {
    return name == "steane7" || name == "five_qubit" || family_size(name, "bf", "bit_flip") ||
           family_size(name, "pf", "phase_flip");
}

StabilizerCode builtin_code(std::string_view name) {
    if (name == "steane7") {
        return steane_code();
    }
    if (name == "five_qubit") {
        return five_qubit_code();
    }
    if (auto n = family_size(name, "bf", "bit_flip")) {
        return bit_flip_code(*n);
    }
    if (auto n = family_size(name, "pf", "phase_flip")) {
        return phase_flip_code(*n);
    }
    throw std::invalid_argument("unknown code '" + std::string(name) + "'");
}

StabilizerCode parse_code_file(std::istream &in, std::string name) {
    std::optional<size_t> n;
    std::optional<size_t> k;
    std::vector<PauliString> gens;
    std::optional<PauliString> log_x;
    std::optional<PauliString> log_z;
    std::vector<std::pair<Syndrome, PauliString>> recs;
    std::string line;
    size_t line_no = 0;
    auto fail = [&](const std::string &why) {
        throw std::invalid_argument("code file line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream words(line);
        std::string key;
        if (!(words >> key)) {
            continue;
        }
        std::string a, b, extra;
        words >> a >> b;
        if (words >> extra) {
            fail("unexpected trailing text '" + extra + "'");
        }
        bool two_args = key == "rec";
        if (a.empty() || (two_args && b.empty()) || (!two_args && !b.empty())) {
            fail("wrong number of fields for '" + key + "'");
        }
        try {
            if (key == "name") {
                name = a;
            } else if (key == "n" || key == "k") {
                auto v = parse_size(a);
                if (!v) {
                    fail("expected an integer after '" + key + "'");
                }
                (key == "n" ? n : k) = *v;
            } else if (key == "gen") {
                gens.push_back(PauliString::from_text(a));
            } else if (key == "logX") {
                log_x = PauliString::from_text(a);
            } else if (key == "logZ") {
                log_z = PauliString::from_text(a);
            } else if (key == "rec") {
                recs.emplace_back(Syndrome::from_text(a), PauliString::from_text(b));
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument &e) {
            if (std::string_view(e.what()).starts_with("code file line")) {
                throw;
            }
            fail(e.what());
        }
    }
    if (!n || !k || !log_x || !log_z) {
        throw std::invalid_argument("code file must define n, k, logX and logZ");
    }
    if (*k != 1) {
        throw UnsupportedError("only codes with k = 1 are supported");
    }
    if (log_x->num_qubits() != *n || log_z->num_qubits() != *n) {
        throw std::invalid_argument("logical operator length does not match n");
    }
    std::vector<PauliString> rec_ops;
    for (const auto &[syn, op] : recs) {
        rec_ops.push_back(op);
    }
    StabilizerCode code(std::move(name), std::move(gens), *log_x, *log_z, rec_ops);
    for (const auto &[syn, op] : recs) {
        if (code.syndrome(op) != syn) {
            throw std::invalid_argument(
                "recovery " + op.str() + " has syndrome " + code.syndrome(op).str() + ", not " + syn.str());
        }
    }
    return code;
}

StabilizerCode load_code_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open code file '" + path + "'");
    }
    std::string stem = path.substr(path.find_last_of('/') + 1);
    return parse_code_file(in, stem);
}

std::string code_file_text(const StabilizerCode &code) {
    std::ostringstream out;
    out << "name " << code.name() << "\n";
    out << "n " << code.n() << "\n";
    out << "k " << code.k() << "\n";
    for (const auto &g : code.generators()) {
        out << "gen " << g.str() << "\n";
    }
    out << "logX " << code.logical_x().str() << "\n";
    out << "logZ " << code.logical_z().str() << "\n";
    for (size_t s = 0; s < code.recovery().size(); s++) {
        out << "rec " << Syndrome{s, code.num_checks()}.str() << " " << code.recovery()[s].str() << "\n";
    }
    return out.str();
}

}  // namespace qecdyn
