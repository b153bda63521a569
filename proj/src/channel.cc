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

#include "qecdyn/channel.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qecdyn {

namespace {

constexpr const char *kRowNames = "IXYZ";

void check_first_row(const Matrix4 &m) {
    if (m[0][0] != 1.0 || m[0][1] != 0.0 || m[0][2] != 0.0 || m[0][3] != 0.0) {
        throw std::invalid_argument("transfer matrix first row must be exactly (1, 0, 0, 0)");
    }
}

}  // namespace

Channel::Channel() : m_{} {
    for (size_t i = 0; i < 4; i++) {
        m_[i][i] = 1.0;
    }
}

Channel::Channel(const Matrix4 &matrix) : m_(matrix) {
    check_first_row(m_);
}

Channel Channel::diagonal(double x, double y, double z) {
    Matrix4 m{};
    m[0][0] = 1.0;
    m[1][1] = x;
    m[2][2] = y;
    m[3][3] = z;
    return Channel(m);
}

Channel Channel::from_free_parameters(const std::array<double, 12> &params) {
    Matrix4 m{};
    m[0][0] = 1.0;
    for (size_t r = 1; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            m[r][c] = params[(r - 1) * 4 + c];
        }
    }
    return Channel(m);
}

std::array<double, 12> Channel::free_parameters() const {
    std::array<double, 12> out{};
    for (size_t r = 1; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            out[(r - 1) * 4 + c] = m_[r][c];
        }
    }
    return out;
}

Vec3 Channel::nonunital() const {
    return {m_[1][0], m_[2][0], m_[3][0]};
}

Vec3 Channel::diagonal_entries() const {
    return {m_[1][1], m_[2][2], m_[3][3]};
}

bool Channel::is_diagonal(double tol) const {
    for (size_t r = 1; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            if (r != c && std::abs(m_[r][c]) > tol) {
                return false;
            }
        }
    }
    return true;
}

double tetrahedron_excess(const Vec3 &v) {
    double x = v[0], y = v[1], z = v[2];
    return std::max({-x + y + z, x - y + z, x + y - z, -x - y - z}) - 1.0;
}

bool in_tetrahedron(const Vec3 &xyz, double tol) {
    return tetrahedron_excess(xyz) <= tol;
}

DiagonalChannel::DiagonalChannel(double x, double y, double z, double tol) : v_{x, y, z} {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("diagonal channel entries must be finite");
    }
    double excess = tetrahedron_excess(v_);
    if (excess > tol) {
        std::ostringstream msg;
        msg << "[" << format_number(x) << ", " << format_number(y) << ", " << format_number(z)
            << "] lies outside the tetrahedron of diagonal channels (excess " << excess << ")";
        throw std::invalid_argument(msg.str());
    }
}

DiagonalChannel DiagonalChannel::from_channel(const Channel &c, double tol) {
    if (!c.is_diagonal(tol)) {
        throw std::invalid_argument("channel has off-diagonal entries");
    }
    return DiagonalChannel(c.diagonal_entries());
}

DiagonalChannel from_pauli_probs(double p_x, double p_y, double p_z) {
    for (double p : {p_x, p_y, p_z}) {
        if (!(p >= 0.0) || p > 1.0) {
            throw std::invalid_argument("Pauli error probabilities must lie in [0, 1]");
        }
    }
    if (p_x + p_y + p_z > 1.0 + 1e-15) {
        throw std::invalid_argument("Pauli error probabilities sum to more than 1");
    }
    return DiagonalChannel(1 - 2 * (p_y + p_z), 1 - 2 * (p_x + p_z), 1 - 2 * (p_x + p_y));
}

std::string ValidityReport::str() const {
    if (ok()) {
        return "valid";
    }
    std::ostringstream out;
    for (size_t i = 0; i < violations.size(); i++) {
        if (i) {
            out << "; ";
        }
        out << violations[i].constraint << " exceeded by " << violations[i].excess;
    }
    return out.str();
}

ValidityReport validate(const Matrix4 &m, double tol) {
    check_first_row(m);
    ValidityReport report;
    auto check = [&](std::string name, double lhs, double rhs) {
        if (!std::isfinite(lhs) || lhs - rhs > tol) {
            report.violations.push_back({std::move(name), lhs - rhs});
        }
    };
    for (size_t r = 1; r < 4; r++) {
        double tail = m[r][1] * m[r][1] + m[r][2] * m[r][2] + m[r][3] * m[r][3];
        double head = std::abs(m[r][0]);
        check(std::string("row ") + kRowNames[r] + " norm", tail + head * head, 1.0);
        check(std::string("row ") + kRowNames[r] + " bound", tail, (1.0 - head) * (1.0 - head));
    }
    for (size_t c = 1; c < 4; c++) {
        for (int s : {+1, -1}) {
            double sum = 0;
            for (size_t r = 1; r < 4; r++) {
                double v = m[r][0] + s * m[r][c];
                sum += v * v;
            }
            check(std::string("column ") + kRowNames[c] + (s > 0 ? " (+)" : " (-)") + " bound", sum, 1.0);
        }
    }
    check("tetrahedron", tetrahedron_excess({m[1][1], m[2][2], m[3][3]}), 0.0);
    return report;
}

ValidityReport validate(const Channel &c, double tol) {
    return validate(c.matrix(), tol);
}

bool two_point_check(const Channel &c, double tol) {
    int near_one = 0;
    for (size_t i = 1; i < 4; i++) {
        if (std::abs(c.at(i, i) - 1.0) <= tol) {
            near_one++;
        }
    }
    return near_one >= 2;
}

Channel compose(const Channel &a, const Channel &b) {
    Matrix4 out{};
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            double s = 0;
            for (size_t k = 0; k < 4; k++) {
                s += a.at(r, k) * b.at(k, c);
            }
            out[r][c] = s;
        }
    }
    return Channel(out);
}

DiagonalChannel compose(const DiagonalChannel &a, const DiagonalChannel &b) {
    return DiagonalChannel(a.x() * b.x(), a.y() * b.y(), a.z() * b.z());
}

double distance_to_identity(const Channel &c) {
    double d = 0;
    for (size_t r = 0; r < 4; r++) {
        for (size_t k = 0; k < 4; k++) {
            d = std::max(d, std::abs(c.at(r, k) - (r == k ? 1.0 : 0.0)));
        }
    }
    return d;
}

double distance_to_identity(const DiagonalChannel &c) {
    return std::max({std::abs(1 - c.x()), std::abs(1 - c.y()), std::abs(1 - c.z())});
}

double round_sig9(double v) {
    if (!std::isfinite(v) || v == 0.0) {
        return v;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::strtod(buf, nullptr);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

nlohmann::json to_json(const Channel &c) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t r = 0; r < 4; r++) {
        nlohmann::json row = nlohmann::json::array();
        for (size_t k = 0; k < 4; k++) {
            row.push_back(round_sig9(c.at(r, k)));
        }
        rows.push_back(row);
    }
    return {{"ptm", rows}};
}

nlohmann::json to_json(const DiagonalChannel &c) {
    return {{"diag", {round_sig9(c.x()), round_sig9(c.y()), round_sig9(c.z())}}};
}

namespace {

DiagonalChannel diag_from_array(const nlohmann::json &a) {
    if (!a.is_array() || a.size() != 3) {
        throw std::invalid_argument("\"diag\" must be an array of three numbers");
    }
    return DiagonalChannel(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
}

Channel ptm_from_array(const nlohmann::json &a) {
    if (!a.is_array() || a.size() != 4) {
        throw std::invalid_argument("\"ptm\" must be a 4x4 array");
    }
    Matrix4 m{};
    for (size_t r = 0; r < 4; r++) {
        if (!a[r].is_array() || a[r].size() != 4) {
            throw std::invalid_argument("\"ptm\" must be a 4x4 array");
        }
        for (size_t c = 0; c < 4; c++) {
            m[r][c] = a[r][c].get<double>();
        }
    }
    return Channel(m);
}

}  // namespace

AnyChannel channel_from_json(const nlohmann::json &j) {
    try {
        if (j.is_object()) {
            if (j.contains("diag")) {
                return diag_from_array(j.at("diag"));
            }
            if (j.contains("ptm")) {
                return ptm_from_array(j.at("ptm"));
            }
            throw std::invalid_argument("channel JSON needs a \"diag\" or \"ptm\" key");
        }
        if (j.is_array() && j.size() == 3 && j[0].is_number()) {
            return diag_from_array(j);
        }
        if (j.is_array() && j.size() == 4) {
            return ptm_from_array(j);
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed channel JSON: ") + e.what());
    }
    throw std::invalid_argument("unrecognized channel JSON");
}

std::string csv_header(const Channel &) {
    std::string out;
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            if (!out.empty()) {
                out += ',';
            }
            out += kRowNames[r];
            out += kRowNames[c];
        }
    }
    return out;
}

std::string csv_header(const DiagonalChannel &) {
    return "x,y,z";
}

std::string csv_row(const Channel &c) {
    std::string out;
    for (size_t r = 0; r < 4; r++) {
        for (size_t k = 0; k < 4; k++) {
            if (r || k) {
                out += ',';
            }
            out += format_number(c.at(r, k));
        }
    }
    return out;
}

std::string csv_row(const DiagonalChannel &c) {
    return format_number(c.x()) + "," + format_number(c.y()) + "," + format_number(c.z());
}

std::ostream &operator<<(std::ostream &out, const Channel &c) {
    out << "[";
    for (size_t r = 0; r < 4; r++) {
        out << (r ? "; " : "");
        for (size_t k = 0; k < 4; k++) {
            out << (k ? " " : "") << format_number(c.at(r, k));
        }
    }
    return out << "]";
}

std::ostream &operator<<(std::ostream &out, const DiagonalChannel &c) {
    return out << "[" << format_number(c.x()) << ", " << format_number(c.y()) << ", " << format_number(c.z())
               << "]";
}

}  // namespace qecdyn
