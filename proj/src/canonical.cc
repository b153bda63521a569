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

#include "qecdyn/canonical.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qecdyn/dynamics.h"
#include "qecdyn/errors.h"

namespace qecdyn {

namespace {

Matrix3 identity3() {
    Matrix3 m{};
    for (size_t i = 0; i < 3; i++) {
        m[i][i] = 1.0;
    }
    return m;
}

double det3(const Matrix3 &m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Vec3 column(const Matrix3 &m, size_t c) {
    return {m[0][c], m[1][c], m[2][c]};
}

void set_column(Matrix3 &m, size_t c, const Vec3 &v) {
    for (size_t r = 0; r < 3; r++) {
        m[r][c] = v[r];
    }
}

double dot(const Vec3 &a, const Vec3 &b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3 &v) {
    double n = std::sqrt(dot(v, v));
    return {v[0] / n, v[1] / n, v[2] / n};
}

/// Unit vector orthogonal to the unit vector u.
Vec3 any_orthogonal(const Vec3 &u) {
    size_t smallest = 0;
    for (size_t i = 1; i < 3; i++) {
        if (std::abs(u[i]) < std::abs(u[smallest])) {
            smallest = i;
        }
    }
    Vec3 e{};
    e[smallest] = 1.0;
    return normalized(cross(u, e));
}

Channel embed(const Matrix3 &r) {
    Matrix4 m{};
    m[0][0] = 1.0;
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            m[i + 1][j + 1] = r[i][j];
        }
    }
    return Channel(m);
}

Channel transpose(const Channel &c) {
    Matrix4 m{};
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            m[i][j] = c.at(j, i);
        }
    }
    return Channel(m);
}

Matrix4 multiply4(const Matrix4 &a, const Matrix4 &b) {
    Matrix4 out{};
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            for (size_t k = 0; k < 4; k++) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

}  // namespace

Channel rotation_channel(Letter axis, double theta) {
    if (axis == Letter::I) {
        throw std::invalid_argument("rotation axis must be X, Y or Z");
    }
    Vec3 n{};
    n[index_of(axis) - 1] = 1.0;
    double c = std::cos(theta);
    double s = std::sin(theta);
    // cos(theta) I + (1 - cos(theta)) n n^T - sin(theta) [n]_x
    Matrix3 cross_matrix{{{0, -n[2], n[1]}, {n[2], 0, -n[0]}, {-n[1], n[0], 0}}};
    Matrix3 r{};
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            r[i][j] = (i == j ? c : 0.0) + (1 - c) * n[i] * n[j] - s * cross_matrix[i][j];
        }
    }
    return embed(r);
}

Svd3 svd3(const Matrix3 &a) {
    Matrix3 w = a;
    Matrix3 v = identity3();
    for (int sweep = 0; sweep < 60; sweep++) {
        double off = 0;
        for (size_t p = 0; p < 2; p++) {
            for (size_t q = p + 1; q < 3; q++) {
                Vec3 wp = column(w, p);
                Vec3 wq = column(w, q);
                double alpha = dot(wp, wp);
                double beta = dot(wq, wq);
                double gamma = dot(wp, wq);
                if (gamma == 0.0) {
                    continue;
                }
                off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
                double zeta = (beta - alpha) / (2 * gamma);
                double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                double cs = 1 / std::sqrt(1 + t * t);
                double sn = cs * t;
                for (size_t r = 0; r < 3; r++) {
                    double x = w[r][p], y = w[r][q];
                    w[r][p] = cs * x - sn * y;
                    w[r][q] = sn * x + cs * y;
                    x = v[r][p];
                    y = v[r][q];
                    v[r][p] = cs * x - sn * y;
                    v[r][q] = sn * x + cs * y;
                }
            }
        }
        if (off < 1e-15) {
            break;
        }
    }
    std::array<size_t, 3> order{0, 1, 2};
    Vec3 norms{};
    for (size_t c = 0; c < 3; c++) {
        norms[c] = std::sqrt(dot(column(w, c), column(w, c)));
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return norms[x] > norms[y]; });
    Svd3 out{};
    double scale = std::max(norms[order[0]], 1e-300);
    for (size_t i = 0; i < 3; i++) {
        size_t c = order[i];
        out.s[i] = norms[c];
        set_column(out.v, i, column(v, c));
        if (norms[c] > 1e-13 * scale && norms[c] > 0) {
            Vec3 col = column(w, c);
            set_column(out.u, i, {col[0] / norms[c], col[1] / norms[c], col[2] / norms[c]});
        } else {
            out.s[i] = norms[c];
            // Complete U to an orthonormal basis for vanishing singular values.
            if (i == 0) {
                set_column(out.u, 0, {1, 0, 0});
            } else if (i == 1) {
                set_column(out.u, 1, any_orthogonal(column(out.u, 0)));
            } else {
                set_column(out.u, 2, cross(column(out.u, 0), column(out.u, 1)));
            }
        }
    }
    return out;
}

Channel CanonicalForm::canonical() const {
    Matrix4 m{};
    m[0][0] = 1.0;
    for (size_t i = 0; i < 3; i++) {
        m[i + 1][0] = t_prime[i];
        m[i + 1][i + 1] = det_sign * lambdas[i];
    }
    return Channel(m);
}

Channel CanonicalForm::reconstruct() const {
    return compose(compose(u2, canonical()), transpose(u1));
}

CanonicalForm svd_canonical(const Channel &n) {
    Matrix3 a{};
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            a[i][j] = n.at(i + 1, j + 1);
        }
    }
    Svd3 svd = svd3(a);
    double du = det3(svd.u) < 0 ? -1.0 : 1.0;
    double dv = det3(svd.v) < 0 ? -1.0 : 1.0;
    Matrix3 r2{};
    Matrix3 r1{};
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            r2[i][j] = du * svd.u[i][j];
            r1[i][j] = dv * svd.v[i][j];
        }
    }
    Vec3 t = n.nonunital();
    Vec3 t_prime{};
    for (size_t i = 0; i < 3; i++) {
        for (size_t k = 0; k < 3; k++) {
            t_prime[i] += r2[k][i] * t[k];
        }
    }
    return {t_prime, svd.s, static_cast<int>(du * dv), embed(r1), embed(r2)};
}

nlohmann::json to_json(const CanonicalForm &cf) {
    auto rows = [](const Channel &c) {
        nlohmann::json out = nlohmann::json::array();
        for (size_t i = 0; i < 4; i++) {
            nlohmann::json row = nlohmann::json::array();
            for (size_t j = 0; j < 4; j++) {
                row.push_back(round_sig9(c.at(i, j)));
            }
            out.push_back(row);
        }
        return out;
    };
    auto vec = [](const Vec3 &v) { return nlohmann::json{round_sig9(v[0]), round_sig9(v[1]), round_sig9(v[2])}; };
    return {
        {"t_prime", vec(cf.t_prime)},
        {"lambdas", vec(cf.lambdas)},
        {"det_sign", cf.det_sign},
        {"u1", rows(cf.u1)},
        {"u2", rows(cf.u2)},
    };
}

Vec4 pair_map_step(const ReducedRowMap &row_map, double a, double b) {
    return row_map({a, b, 0.0, 0.0});
}

bool pair_converges(const ReducedRowMap &row_map, double a, double b, size_t max_iter) {
    return reduced_row_converges(row_map, {a, b, 0.0, 0.0}, max_iter);
}

CanonicalConvergence canonical_convergence(const CodingMap &map, const CanonicalForm &cf) {
    if (!map.is_css()) {
        throw UnsupportedError("canonical convergence needs a CSS code; '" + map.name() + "' is not");
    }
    ReducedRowMap x_map(map, RowAxis::X);
    ReducedRowMap z_map(map, RowAxis::Z);
    CanonicalConvergence out;
    for (size_t i = 0; i < 3; i++) {
        out.converges_as_x[i] = pair_converges(x_map, cf.t_prime[i], cf.lambdas[i]);
        out.converges_as_z[i] = pair_converges(z_map, cf.t_prime[i], cf.lambdas[i]);
    }
    double best = -1;
    for (size_t i = 0; i < 3; i++) {
        for (size_t j = 0; j < 3; j++) {
            if (i == j || !out.converges_as_x[i] || !out.converges_as_z[j]) {
                continue;
            }
            double score = std::min(cf.lambdas[i], cf.lambdas[j]);
            if (score > best) {
                best = score;
                out.axis_to_x = i;
                out.axis_to_z = j;
            }
        }
    }
    if (best < 0) {
        return out;
    }
    out.correctable = true;
    size_t i = out.axis_to_x;
    size_t j = out.axis_to_z;
    size_t r = 3 - i - j;
    Matrix4 a{};
    a[0][0] = 1.0;
    a[1][i + 1] = 1.0;
    a[3][j + 1] = 1.0;
    a[2][r + 1] = 1.0;
    Matrix3 block{};
    for (size_t p = 0; p < 3; p++) {
        for (size_t q = 0; q < 3; q++) {
            block[p][q] = a[p + 1][q + 1];
        }
    }
    if (det3(block) < 0) {
        a[2][r + 1] = -1.0;
    }
    Matrix4 b{};
    double s = cf.det_sign;
    b[0][0] = 1.0;
    b[1][1] = s;
    b[2][2] = 1.0;
    b[3][3] = s;
    Matrix4 a_t{};
    for (size_t p = 0; p < 4; p++) {
        for (size_t q = 0; q < 4; q++) {
            a_t[p][q] = a[q][p];
        }
    }
    out.a = a;
    out.b = b;
    out.transformed = Channel(multiply4(multiply4(multiply4(a, cf.canonical().matrix()), a_t), b));
    return out;
}

double pair_boundary_b(const ReducedRowMap &row_map, size_t a_steps, double tol) {
    if (a_steps < 2) {
        throw std::invalid_argument("need at least two points along a");
    }
    auto all_converge = [&](double b) {
        double a_max = std::sqrt(std::max(0.0, 1 - b * b));
        for (size_t k = 0; k < a_steps; k++) {
            double a = a_max * static_cast<double>(k) / static_cast<double>(a_steps - 1);
            if (!pair_converges(row_map, a, b)) {
                return false;
            }
        }
        return true;
    };
    double lo = 0.0;
    double hi = 1.0;
    if (!all_converge(hi)) {
        throw std::invalid_argument("the pair map does not fix [0, 1]");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (all_converge(mid) ? hi : lo) = mid;
    }
    return hi;
}

double pair_boundary_theta(const ReducedRowMap &row_map, double tol) {
    auto ok = [&](double theta) { return pair_converges(row_map, std::sin(theta), std::cos(theta)); };
    double lo = 0.0;
    double hi = std::acos(-1.0) / 2;
    if (!ok(lo) || ok(hi)) {
        throw std::invalid_argument("the pair map has no rotation-angle boundary in (0, pi/2)");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qecdyn
