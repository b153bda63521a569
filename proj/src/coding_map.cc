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

#include "qecdyn/coding_map.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qecdyn/errors.h"

namespace qecdyn {

template <size_t Vars>
double Polynomial<Vars>::operator()(const std::array<double, Vars> &v) const {
    // powers[k][e] = v[k]^e; degrees never exceed the 63-qubit limit.
    std::array<std::array<double, 64>, Vars> powers;
    for (size_t k = 0; k < Vars; k++) {
        powers[k][0] = 1.0;
        for (unsigned e = 1; e <= max_degree; e++) {
            powers[k][e] = powers[k][e - 1] * v[k];
        }
    }
    double total = 0;
    for (const auto &m : terms) {
        double t = static_cast<double>(m.numerator);
        for (size_t k = 0; k < Vars; k++) {
            t *= powers[k][m.exponents[k]];
        }
        total += t;
    }
    return total / static_cast<double>(denominator);
}

template struct Polynomial<3>;
template struct Polynomial<4>;

namespace {

template <size_t Vars>
Polynomial<Vars> collect(const std::map<std::array<unsigned, Vars>, int64_t> &acc, int64_t denominator) {
    Polynomial<Vars> poly;
    poly.denominator = denominator;
    for (const auto &[exps, num] : acc) {
        if (num == 0) {
            continue;
        }
        poly.terms.push_back({exps, num});
        for (unsigned e : exps) {
            poly.max_degree = std::max(poly.max_degree, e);
        }
    }
    return poly;
}

/// Sum over recovery operators of the sign-independent commutation with p.
int64_t recovery_commutation_count(const StabilizerCode &code, const PauliString &p) {
    int64_t count = 0;
    for (const auto &r : code.recovery()) {
        count += commutes(r, p) ? 1 : -1;
    }
    return count;
}

}  // namespace

CodingMapEvaluator::CodingMapEvaluator(StabilizerCode code) : code_(std::move(code)) {
    const auto &elements = code_.stabilizer_elements();
    int64_t m = static_cast<int64_t>(elements.size());
    for (Letter sigma : kAllLetters) {
        size_t si = index_of(sigma);
        const PauliString &bar = code_.logical(sigma);
        SparseColumn &enc = encoder_[si];
        SparseColumn &dec = decoder_[si];
        enc.denominator = 1;
        dec.denominator = m;
        std::map<std::array<unsigned, 3>, int64_t> diag;
        for (const auto &s : elements) {
            PauliString p = multiply(bar, s);
            int64_t count = recovery_commutation_count(code_, p);
            enc.terms.push_back({p.unsigned_copy(), p.sign()});
            if (count != 0) {
                dec.terms.push_back({p.unsigned_copy(), p.sign() * count});
            }
            // Diagonal N only pairs a decoder string with the encoder string
            // carrying the same letters, and the two signs cancel.
            std::array<unsigned, 3> exps{
                static_cast<unsigned>(letter_weight(p, Letter::X)),
                static_cast<unsigned>(letter_weight(p, Letter::Y)),
                static_cast<unsigned>(letter_weight(p, Letter::Z))};
            diag[exps] += count;
        }
        diagonal_[si] = collect<3>(diag, m);
    }
}

const DiagonalPolynomial &CodingMapEvaluator::diagonal_polynomial(Letter sigma) const {
    if (sigma == Letter::I) {
        throw std::invalid_argument("the identity component of the diagonal map is constant");
    }
    return diagonal_[index_of(sigma)];
}

Matrix4 CodingMapEvaluator::contract(const std::array<const SparseColumn *, 4> &decoder, const Matrix4 &n) const {
    size_t nq = code_.n();
    // Letters of every string, flattened, so the inner loop is a table lookup.
    auto letters_of = [&](const SparseColumn &col) {
        std::vector<uint8_t> out(col.terms.size() * nq);
        for (size_t t = 0; t < col.terms.size(); t++) {
            for (size_t q = 0; q < nq; q++) {
                out[t * nq + q] = static_cast<uint8_t>(index_of(col.terms[t].op.letter(q)));
            }
        }
        return out;
    };
    std::array<std::vector<uint8_t>, 4> enc_letters;
    std::array<std::vector<uint8_t>, 4> dec_letters;
    for (size_t c = 0; c < 4; c++) {
        enc_letters[c] = letters_of(encoder_[c]);
        dec_letters[c] = letters_of(*decoder[c]);
    }
    Matrix4 g{};
    for (size_t r = 0; r < 4; r++) {
        const SparseColumn &dec = *decoder[r];
        for (size_t c = 0; c < 4; c++) {
            const SparseColumn &enc = encoder_[c];
            double total = 0;
            for (size_t i = 0; i < dec.terms.size(); i++) {
                const uint8_t *dl = &dec_letters[r][i * nq];
                double inner = 0;
                for (size_t j = 0; j < enc.terms.size(); j++) {
                    const uint8_t *el = &enc_letters[c][j * nq];
                    double prod = static_cast<double>(enc.terms[j].numerator);
                    for (size_t q = 0; q < nq && prod != 0.0; q++) {
                        prod *= n[dl[q]][el[q]];
                    }
                    inner += prod;
                }
                total += inner * static_cast<double>(dec.terms[i].numerator);
            }
            g[r][c] = total / static_cast<double>(dec.denominator * enc.denominator);
        }
    }
    return g;
}

Matrix4 CodingMapEvaluator::apply_general(const Matrix4 &n) const {
    return contract({&decoder_[0], &decoder_[1], &decoder_[2], &decoder_[3]}, n);
}

Vec3 CodingMapEvaluator::evaluate_diagonal(const Vec3 &xyz) const {
    return {diagonal_[1](xyz), diagonal_[2](xyz), diagonal_[3](xyz)};
}

SparseColumn CodingMapEvaluator::syndrome_decoder(Letter sigma, const Syndrome &beta) const {
    const PauliString &r = code_.recovery(beta);
    const SparseColumn &enc = encoder_[index_of(sigma)];
    SparseColumn col;
    col.denominator = static_cast<int64_t>(code_.stabilizer_elements().size());
    for (const auto &term : enc.terms) {
        int64_t eta = commutes(r, term.op) ? 1 : -1;
        col.terms.push_back({term.op, term.numerator * eta});
    }
    return col;
}

QuasiChannel CodingMapEvaluator::syndrome_quasi_channel(const Channel &n, const Syndrome &beta) const {
    std::array<SparseColumn, 4> cols;
    for (Letter sigma : kAllLetters) {
        cols[index_of(sigma)] = syndrome_decoder(sigma, beta);
    }
    return {contract({&cols[0], &cols[1], &cols[2], &cols[3]}, n.matrix())};
}

RowPolynomial CodingMapEvaluator::row_polynomial(Letter row, Letter col) const {
    if (row == Letter::I) {
        throw std::invalid_argument("the identity row of the coding map is constant");
    }
    const SparseColumn &dec = decoder_[index_of(row)];
    const SparseColumn &enc = encoder_[index_of(col)];
    size_t nq = code_.n();
    std::map<std::array<unsigned, 4>, int64_t> acc;
    for (const auto &d : dec.terms) {
        for (size_t q = 0; q < nq; q++) {
            Letter l = d.op.letter(q);
            if (l != Letter::I && l != row) {
                throw UnsupportedError(
                    "row " + std::string(1, letter_char(row)) + " of code " + code_.name() +
                    " mixes in other rows (decoder string " + d.op.str() + ")");
            }
        }
        uint64_t support = d.op.xbits() | d.op.zbits();
        for (const auto &e : enc.terms) {
            // Identity positions of d contribute N_{I e_q}, which vanishes unless e_q = I.
            uint64_t e_support = e.op.xbits() | e.op.zbits();
            if (e_support & ~support) {
                continue;
            }
            std::array<unsigned, 4> exps{};
            for (size_t q = 0; q < nq; q++) {
                if ((support >> q) & 1) {
                    exps[index_of(e.op.letter(q))]++;
                }
            }
            acc[exps] += d.numerator * e.numerator;
        }
    }
    return collect<4>(acc, dec.denominator * enc.denominator);
}

CodingMap::CodingMap(StabilizerCode code) {
    name_ = code.name();
    levels_.push_back(std::make_shared<const CodingMapEvaluator>(std::move(code)));
}

CodingMap::CodingMap(std::string name, std::vector<std::shared_ptr<const CodingMapEvaluator>> levels)
    : name_(std::move(name)), levels_(std::move(levels)) {
    if (levels_.empty()) {
        throw std::invalid_argument("a coding map needs at least one level");
    }
}

bool CodingMap::is_css() const {
    return std::all_of(levels_.begin(), levels_.end(), [](const auto &ev) { return ev->code().is_css(); });
}

const CodingMapEvaluator &CodingMap::single() const {
    if (is_composite()) {
        throw UnsupportedError("operation needs a single code, but '" + name_ + "' is a composition");
    }
    return *levels_.front();
}

Matrix4 CodingMap::apply_general(const Matrix4 &n) const {
    for (const auto &ev : levels_) {
        if (ev->code().n() > kMaxGeneralQubits) {
            throw UnsupportedError(
                "general coding map of '" + ev->code().name() + "' (n = " + std::to_string(ev->code().n()) +
                ") exceeds the " + std::to_string(kMaxGeneralQubits) + "-qubit limit");
        }
    }
    Matrix4 cur = n;
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
        cur = (*it)->apply_general(cur);
    }
    return cur;
}

Channel CodingMap::apply_general(const Channel &n) const {
    return Channel(apply_general(n.matrix()));
}

Vec3 CodingMap::evaluate_diagonal(const Vec3 &xyz) const {
    Vec3 cur = xyz;
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
        cur = (*it)->evaluate_diagonal(cur);
    }
    return cur;
}

DiagonalChannel CodingMap::apply_diagonal(const DiagonalChannel &c) const {
    Vec3 cur = c.values();
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
        cur = (*it)->evaluate_diagonal(cur);
        if (!in_tetrahedron(cur)) {
            std::ostringstream msg;
            msg << "coding map level '" << (*it)->code().name() << "' left the tetrahedron at [" << cur[0] << ", "
                << cur[1] << ", " << cur[2] << "]";
            throw std::logic_error(msg.str());
        }
    }
    return DiagonalChannel(cur);
}

namespace {

std::string expand_tag(std::string_view term) {
    if (term == "shor9") {
        return "pf3*bf3";
    }
    if (term == "gshor15") {
        return "pf5*bf3";
    }
    if (term == "gshor25") {
        return "pf5*bf5";
    }
    return std::string(term);
}

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string_view::npos ? "" : std::string(s.substr(b, e - b + 1));
}

}  // namespace

CodingMap resolve_coding_map(std::string_view expr) {
    std::string name = trim(expr);
    if (name.empty()) {
        throw std::invalid_argument("empty code expression");
    }
    // A path wins over the expression syntax, so file names may contain '*'.
    if (!is_builtin_code_name(name) && std::filesystem::is_regular_file(name)) {
        return CodingMap(load_code_file(name));
    }
    std::vector<std::shared_ptr<const CodingMapEvaluator>> levels;
    std::string_view rest = name;
    while (true) {
        size_t star = rest.find('*');
        std::string term = trim(rest.substr(0, star));
        if (term.empty()) {
            throw std::invalid_argument("malformed code expression '" + name + "'");
        }
        std::string expanded = expand_tag(term);
        if (expanded != term) {
            CodingMap sub = resolve_coding_map(expanded);
            levels.insert(levels.end(), sub.levels().begin(), sub.levels().end());
        } else if (is_builtin_code_name(term)) {
            levels.push_back(std::make_shared<const CodingMapEvaluator>(builtin_code(term)));
        } else if (std::filesystem::is_regular_file(term)) {
            levels.push_back(std::make_shared<const CodingMapEvaluator>(load_code_file(term)));
        } else {
            throw std::invalid_argument("unknown code or missing file '" + term + "'");
        }
        if (star == std::string_view::npos) {
            break;
        }
        rest = rest.substr(star + 1);
    }
    return CodingMap(name, std::move(levels));
}

namespace {

void check_eps(double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::invalid_argument("gate noise rate must lie in [0, 1)");
    }
}

}  // namespace

Channel faulty_map(const CodingMap &map, const Channel &c, double eps) {
    check_eps(eps);
    Matrix4 g = map.apply_general(c.matrix());
    for (size_t r = 1; r < 4; r++) {
        for (size_t k = 0; k < 4; k++) {
            g[r][k] *= 1.0 - eps;
        }
    }
    g[0] = {1.0, 0.0, 0.0, 0.0};
    return Channel(g);
}

Vec3 faulty_map_raw(const CodingMap &map, const Vec3 &xyz, double eps) {
    check_eps(eps);
    Vec3 v = map.evaluate_diagonal(xyz);
    for (double &e : v) {
        e *= 1.0 - eps;
    }
    return v;
}

DiagonalChannel faulty_map(const CodingMap &map, const DiagonalChannel &c, double eps) {
    check_eps(eps);
    DiagonalChannel ideal = map.apply_diagonal(c);
    return DiagonalChannel((1.0 - eps) * ideal.x(), (1.0 - eps) * ideal.y(), (1.0 - eps) * ideal.z());
}

Letter row_letter(RowAxis axis) {
    return axis == RowAxis::X ? Letter::X : Letter::Z;
}

Vec4 reduced_to_natural(RowAxis axis, const Vec4 &v) {
    if (axis == RowAxis::X) {
        return {v[0], v[1], v[3], v[2]};
    }
    return {v[0], v[2], v[3], v[1]};
}

Vec4 natural_to_reduced(RowAxis axis, const Vec4 &v) {
    if (axis == RowAxis::X) {
        return {v[0], v[1], v[3], v[2]};
    }
    return {v[0], v[3], v[1], v[2]};
}

Vec4 css_reduced_map(const CodingMap &map, RowAxis axis, const Vec4 &v) {
    if (!map.is_css()) {
        throw UnsupportedError("reduced row maps need a CSS code; '" + map.name() + "' is not");
    }
    size_t r = index_of(row_letter(axis));
    Matrix4 n{};
    n[0][0] = 1.0;
    Vec4 natural = reduced_to_natural(axis, v);
    for (size_t c = 0; c < 4; c++) {
        n[r][c] = natural[c];
    }
    Matrix4 g = map.apply_general(n);
    return natural_to_reduced(axis, {g[r][0], g[r][1], g[r][2], g[r][3]});
}

ReducedRowMap::ReducedRowMap(const CodingMap &map, RowAxis axis) : axis_(axis) {
    if (!map.is_css()) {
        throw UnsupportedError("reduced row maps need a CSS code; '" + map.name() + "' is not");
    }
    Letter row = row_letter(axis);
    for (const auto &ev : map.levels()) {
        std::array<RowPolynomial, 4> polys;
        for (Letter c : kAllLetters) {
            polys[index_of(c)] = ev->row_polynomial(row, c);
        }
        levels_.push_back(std::move(polys));
    }
}

Vec4 ReducedRowMap::operator()(const Vec4 &v) const {
    Vec4 cur = reduced_to_natural(axis_, v);
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
        Vec4 next;
        for (size_t c = 0; c < 4; c++) {
            next[c] = (*it)[c](cur);
        }
        cur = next;
    }
    return natural_to_reduced(axis_, cur);
}

}  // namespace qecdyn
