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

#include "oracles.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qecdyn::oracle {

namespace {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

const cd kI{0.0, 1.0};

Mat2 pauli_matrix(size_t a) {
    Mat2 m;
    switch (a) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, -kI, kI, 0;
            break;
        default:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

// Applies a signed Pauli string to a state vector. Qubit q is bit q of the
// basis index.
Eigen::VectorXcd apply_pauli(const PauliString &p, const Eigen::VectorXcd &v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (Eigen::Index b = 0; b < v.size(); b++) {
        cd phase = p.sign();
        for (size_t q = 0; q < p.num_qubits(); q++) {
            bool bit = (static_cast<uint64_t>(b) >> q) & 1;
            Letter l = p.letter(q);
            if (l == Letter::Z && bit) {
                phase = -phase;
            } else if (l == Letter::Y) {
                phase *= bit ? -kI : kI;
            }
        }
        out[static_cast<Eigen::Index>(static_cast<uint64_t>(b) ^ p.xbits())] += phase * v[b];
    }
    return out;
}

// rho -> sum_ab R_ab sigma_a tr(sigma_b m) / 2 on qubit q.
void apply_qubit_channel(Eigen::MatrixXcd &rho, size_t q, const Matrix4 &r) {
    Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index row = 0; row < rho.rows(); row++) {
        if (row & bit) {
            continue;
        }
        for (Eigen::Index col = 0; col < rho.cols(); col++) {
            if (col & bit) {
                continue;
            }
            Mat2 m;
            m << rho(row, col), rho(row, col | bit), rho(row | bit, col), rho(row | bit, col | bit);
            std::array<cd, 4> in;
            for (size_t b = 0; b < 4; b++) {
                in[b] = (pauli_matrix(b) * m).trace() / 2.0;
            }
            Mat2 out = Mat2::Zero();
            for (size_t a = 0; a < 4; a++) {
                cd c = 0;
                for (size_t b = 0; b < 4; b++) {
                    c += r[a][b] * in[b];
                }
                out += c * pauli_matrix(a);
            }
            rho(row, col) = out(0, 0);
            rho(row, col | bit) = out(0, 1);
            rho(row | bit, col) = out(1, 0);
            rho(row | bit, col | bit) = out(1, 1);
        }
    }
}

Matrix4 ptm_from_kraus(const std::vector<Mat2> &kraus) {
    Matrix4 r{};
    for (size_t a = 0; a < 4; a++) {
        for (size_t b = 0; b < 4; b++) {
            cd t = 0;
            for (const Mat2 &k : kraus) {
                t += (pauli_matrix(a) * k * pauli_matrix(b) * k.adjoint()).trace();
            }
            r[a][b] = t.real() / 2;
        }
    }
    r[0] = {1.0, 0.0, 0.0, 0.0};
    return r;
}

}  // namespace

Channel random_channel(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> rank_dist(1, 4);
    std::uniform_real_distribution<double> unit;
    int rank = rank_dist(rng);
    Eigen::MatrixXcd g(2 * rank, 2);
    for (Eigen::Index i = 0; i < g.rows(); i++) {
        for (Eigen::Index j = 0; j < 2; j++) {
            g(i, j) = cd(gauss(rng), gauss(rng));
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat2> eig(g.adjoint() * g);
    Mat2 inv_sqrt = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                    eig.eigenvectors().adjoint();
    Eigen::MatrixXcd v = g * inv_sqrt;
    std::vector<Mat2> kraus;
    for (int k = 0; k < rank; k++) {
        kraus.push_back(v.block(2 * k, 0, 2, 2));
    }
    // Half of the samples are pulled toward the identity so that near-identity
    // channels are well represented.
    if (unit(rng) < 0.5) {
        double t = unit(rng);
        for (Mat2 &k : kraus) {
            k *= std::sqrt(t);
        }
        kraus.push_back(std::sqrt(1 - t) * Mat2::Identity());
    }
    return Channel(ptm_from_kraus(kraus));
}

Vec3 random_diagonal(std::mt19937_64 &rng) {
    std::exponential_distribution<double> e;
    std::array<double, 4> w{e(rng), e(rng), e(rng), e(rng)};
    double total = w[0] + w[1] + w[2] + w[3];
    double px = w[1] / total, py = w[2] / total, pz = w[3] / total;
    return {1 - 2 * (py + pz), 1 - 2 * (px + pz), 1 - 2 * (px + py)};
}

Matrix4 dense_coding_map(const StabilizerCode &code, const Channel &n) {
    size_t nq = code.n();
    Eigen::Index dim = Eigen::Index{1} << nq;

    // Logical zero: project basis states onto the +1 eigenspace of every
    // generator and of Z-bar until one survives.
    Eigen::VectorXcd zero;
    for (Eigen::Index b = 0; b < dim; b++) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
        v[b] = 1;
        for (const PauliString &g : code.generators()) {
            v = (v + apply_pauli(g, v)) / 2.0;
        }
        v = (v + apply_pauli(code.logical_z(), v)) / 2.0;
        if (v.norm() > 1e-3) {
            zero = v / v.norm();
            break;
        }
    }
    if (zero.size() == 0) {
        throw std::logic_error("empty code space");
    }
    Eigen::MatrixXcd enc(dim, 2);
    enc.col(0) = zero;
    enc.col(1) = apply_pauli(code.logical_x(), zero);

    std::vector<std::array<Eigen::VectorXcd, 2>> recovered;
    for (const PauliString &r : code.recovery()) {
        recovered.push_back({apply_pauli(r, enc.col(0)), apply_pauli(r, enc.col(1))});
    }

    Matrix4 out{};
    for (size_t in = 0; in < 4; in++) {
        Eigen::MatrixXcd rho = enc * pauli_matrix(in) * enc.adjoint();
        for (size_t q = 0; q < nq; q++) {
            apply_qubit_channel(rho, q, n.matrix());
        }
        Mat2 logical = Mat2::Zero();
        for (const auto &w : recovered) {
            for (int i = 0; i < 2; i++) {
                for (int j = 0; j < 2; j++) {
                    logical(i, j) += w[i].dot(rho * w[j]);
                }
            }
        }
        for (size_t o = 0; o < 4; o++) {
            out[o][in] = ((pauli_matrix(o) * logical).trace() / 2.0).real();
        }
    }
    return out;
}

StabilizerCode monolithic_shor9() {
    auto block_bits = [](size_t block, uint64_t pattern) { return pattern << (3 * block); };
    std::vector<PauliString> gens;
    for (size_t b = 0; b < 3; b++) {
        gens.push_back(PauliString::from_bits(9, 0, block_bits(b, 0b011)));
        gens.push_back(PauliString::from_bits(9, 0, block_bits(b, 0b101)));
    }
    gens.push_back(PauliString::from_bits(9, 0b000111111, 0));
    gens.push_back(PauliString::from_bits(9, 0b111000111, 0));

    // Majority-vote corrections of a 3-bit repetition code.
    const std::array<uint64_t, 4> inner{0b000, 0b001, 0b010, 0b100};
    std::vector<PauliString> rec;
    for (uint64_t outer : inner) {
        uint64_t zbits = 0;
        for (size_t b = 0; b < 3; b++) {
            if ((outer >> b) & 1) {
                zbits |= block_bits(b, 0b111);
            }
        }
        for (uint64_t b0 : inner) {
            for (uint64_t b1 : inner) {
                for (uint64_t b2 : inner) {
                    uint64_t xbits = block_bits(0, b0) | block_bits(1, b1) | block_bits(2, b2);
                    rec.push_back(PauliString::from_bits(9, xbits, zbits));
                }
            }
        }
    }
    return StabilizerCode(
        "shor9_monolithic", gens, PauliString::from_bits(9, 0x1FF, 0), PauliString::from_bits(9, 0, 0x1FF), rec);
}

Matrix4 rotation_ptm(Letter axis, double theta) {
    Mat2 u = std::cos(theta / 2) * Mat2::Identity() + kI * std::sin(theta / 2) * pauli_matrix(index_of(axis));
    return ptm_from_kraus({u});
}

Vec3 reference_singular_values(const Matrix3 &a) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            m(i, j) = a[i][j];
        }
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
    Eigen::Vector3d s = svd.singularValues();
    return {s[0], s[1], s[2]};
}

double steane_g(double a, double b, double c, double d) {
    return 7.0 / 4 * std::pow(a, 3) - 3.0 / 4 * std::pow(a, 7) -
           21.0 / 4 * std::pow(a, 3) * (std::pow(b, 4) + std::pow(c, 4) + std::pow(d, 4)) +
           63.0 / 2 * a * b * b * c * c * d * d;
}

Vec4 steane_x_row(const Matrix4 &n) {
    double i = n[1][0], x = n[1][1], y = n[1][2], z = n[1][3];
    return {
        7.0 / 4 * std::pow(i, 3) -
            3.0 / 4 * (std::pow(i, 7) + 7 * std::pow(i, 3) * (std::pow(x, 4) + std::pow(y, 4) + std::pow(z, 4)) -
                       42 * i * x * x * y * y * z * z),
        steane_g(x, y, z, i),
        -steane_g(y, z, i, x),
        steane_g(z, i, x, y),
    };
}

}  // namespace qecdyn::oracle
