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

#include "qecdyn/dynamics.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "qecdyn/errors.h"

using namespace qecdyn;

namespace {

constexpr double kSteaneXc = 0.870807;

bool converges(const CodingMap &map, const Vec3 &v) {
    return iterate(map, DiagonalChannel(v)).status == TrajectoryStatus::converged_identity;
}

}  // namespace

TEST(dynamics, iterate_steane) {
    CodingMap steane(steane_code());
    auto up = iterate(steane, DiagonalChannel(0.95, 0.95, 0.95));
    ASSERT_EQ(up.status, TrajectoryStatus::converged_identity);
    ASSERT_LT(up.iterations(), 10u);
    auto down = iterate(steane, DiagonalChannel(0.5, 0.5, 0.5));
    ASSERT_NE(down.status, TrajectoryStatus::converged_identity);
    auto id = iterate(steane, DiagonalChannel());
    ASSERT_EQ(id.status, TrajectoryStatus::converged_identity);
    ASSERT_EQ(id.iterations(), 0u);

    // Consecutive points are one map application apart.
    for (size_t i = 1; i < up.points.size(); i++) {
        ASSERT_EQ(up.points[i], steane.apply_diagonal(up.points[i - 1]));
    }
    ASSERT_EQ(status_name(TrajectoryStatus::not_converged), "not_converged");
}

TEST(dynamics, iterate_general_channels) {
    CodingMap steane(steane_code());
    std::mt19937_64 rng(61);
    for (int k = 0; k < 100; k++) {
        Channel c = oracle::random_channel(rng);
        auto traj = iterate(steane, c, {1e-10, 60});
        if (traj.status == TrajectoryStatus::converged_identity) {
            ASSERT_TRUE(distance_to_identity(traj.last()) <= 1e-10 || two_point_check(traj.last(), 1e-10));
        }
    }
    auto stuck = iterate(steane, Channel::diagonal(0.5, 0.5, 0.5), {1e-10, 3});
    ASSERT_EQ(stuck.status, TrajectoryStatus::not_converged);
    ASSERT_EQ(stuck.iterations(), 3u);
}

TEST(dynamics, iterate_reports_invalid_iterates) {
    auto bad = [](const Channel &) {
        Matrix4 m = Channel::identity().matrix();
        m[1] = {0, 0.8, 0.8, 0};
        return Channel(m);
    };
    try {
        iterate(bad, Channel::diagonal(0.9, 0.9, 0.9));
        FAIL() << "expected an IterationError";
    } catch (const IterationError &e) {
        ASSERT_EQ(e.step, 1u);
        ASSERT_FALSE(e.iterate.empty());
    }
}

TEST(dynamics, jacobian) {
    for (const char *name : {"steane7", "five_qubit", "shor9", "pf5*bf3"}) {
        Matrix j = jacobian_diagonal(resolve_coding_map(name), {1, 1, 1});
        ASSERT_LE(max_abs(j), 1e-6) << name;
    }
    Matrix bf3 = jacobian_diagonal(resolve_coding_map("bf3"), {1, 1, 1});
    ASSERT_NEAR(bf3[0][0], 3.0, 1e-4);
    ASSERT_NEAR(bf3[2][2], 0.0, 1e-6);

    Matrix g = jacobian_general(CodingMap(steane_code()), Channel::identity());
    ASSERT_EQ(g.size(), 12u);
    ASSERT_LE(max_abs(g), 1e-6);

    // Linear function: exact derivative.
    VectorFunction lin = [](const std::vector<double> &v) { return std::vector<double>{2 * v[0] + v[1], -v[1]}; };
    Matrix jl = jacobian(lin, {0.3, 0.4});
    ASSERT_NEAR(jl[0][0], 2, 1e-9);
    ASSERT_NEAR(jl[0][1], 1, 1e-9);
    ASSERT_NEAR(jl[1][1], -1, 1e-9);
    ASSERT_THROW(jacobian(lin, {1e300, 0}, 1e-300), std::invalid_argument);
    ASSERT_THROW(jacobian(lin, {0, 0}, 0), std::invalid_argument);
}

TEST(dynamics, jacobian_zero_for_distance_three_codes) {
    // Central differences at h = 1e-6 are limited by rounding, about
    // machine epsilon / h, not by the h^2 truncation term.
    for (const char *name : {"steane7", "five_qubit", "shor9"}) {
        ASSERT_LE(max_abs(jacobian_diagonal(resolve_coding_map(name), {1, 1, 1}, 1e-6)), 1e-9) << name;
    }
}

TEST(dynamics, thresholds) {
    auto steane = resolve_coding_map("steane7");
    ASSERT_NEAR(diagonal_threshold(component_function(steane, Letter::X)), kSteaneXc, 1e-5);
    ASSERT_NEAR(diagonal_threshold(component_function(steane, Letter::Z)), kSteaneXc, 1e-5);
    auto g15 = resolve_coding_map("pf5*bf3");
    ASSERT_NEAR(diagonal_threshold(component_function(g15, Letter::X)), 0.794438, 1e-5);
    ASSERT_NEAR(diagonal_threshold(component_function(g15, Letter::Z)), 0.850432, 1e-5);
    auto g25 = resolve_coding_map("pf5*bf5");
    ASSERT_NEAR(diagonal_threshold(component_function(g25, Letter::X)), 0.916208, 1e-5);
    ASSERT_NEAR(diagonal_threshold(component_function(g25, Letter::Z)), 0.645611, 1e-5);

    auto bf3 = resolve_coding_map("bf3");
    ASSERT_EQ(diagonal_threshold(component_function(bf3, Letter::Z)), 0.0);
    ASSERT_THROW(component_function(bf3, Letter::Y), UnsupportedError);
    ASSERT_THROW(component_function(resolve_coding_map("five_qubit"), Letter::X), UnsupportedError);

    // f(x) = x^2 has no root in (0, 1) other than the endpoints.
    ASSERT_EQ(diagonal_threshold([](double x) { return x * x; }), 0.0);
    ASSERT_NEAR(diagonal_threshold([](double x) { return 2 * x * x; }), 0.5, 1e-9);
}

TEST(dynamics, threshold_consistency) {
    for (const char *name : {"steane7", "pf5*bf3", "shor9", "pf5*bf5"}) {
        CodingMap map = resolve_coding_map(name);
        double xc = diagonal_threshold(component_function(map, Letter::X));
        double zc = diagonal_threshold(component_function(map, Letter::Z));
        auto x_side = [&](double x) {
            auto t = iterate([&](const DiagonalChannel &c) { return map.apply_diagonal(c); },
                             DiagonalChannel(x, 1, x), {1e-10, 400});
            return std::abs(t.last().x() - 1) < 1e-6;
        };
        auto z_side = [&](double z) {
            auto t = iterate([&](const DiagonalChannel &c) { return map.apply_diagonal(c); },
                             DiagonalChannel(z, 1, z), {1e-10, 400});
            return std::abs(t.last().z() - 1) < 1e-6;
        };
        ASSERT_TRUE(x_side(xc + 1e-3)) << name;
        ASSERT_FALSE(x_side(xc - 1e-3)) << name;
        if (zc > 0) {
            ASSERT_TRUE(z_side(zc + 1e-3)) << name;
            ASSERT_FALSE(z_side(zc - 1e-3)) << name;
        }
    }
}

TEST(dynamics, css_basin) {
    ASSERT_TRUE(css_basin_member(DiagonalChannel(0.9, 0.85, 0.9), kSteaneXc));
    ASSERT_FALSE(css_basin_member(DiagonalChannel(0.9, 0.9, 0.8), kSteaneXc));

    // Membership agrees with iteration on a 20^3 grid, away from the
    // boundary planes where a grid cell straddles the threshold.
    for (const char *name : {"steane7", "pf5*bf3"}) {
        CodingMap map = resolve_coding_map(name);
        double xc = diagonal_threshold(component_function(map, Letter::X));
        double zc = diagonal_threshold(component_function(map, Letter::Z));
        int checked = 0;
        for (int i = 0; i < 20; i++) {
            for (int j = 0; j < 20; j++) {
                for (int k = 0; k < 20; k++) {
                    Vec3 v{-1 + 2.0 * i / 19, -1 + 2.0 * j / 19, -1 + 2.0 * k / 19};
                    if (!in_tetrahedron(v, 1e-12)) {
                        continue;
                    }
                    bool member = v[0] > xc && v[2] > zc;
                    if (std::string(name) == "steane7") {
                        ASSERT_EQ(member, css_basin_member(DiagonalChannel(v), xc));
                    }
                    ASSERT_EQ(member, converges(map, v)) << name << " " << DiagonalChannel(v);
                    checked++;
                }
            }
        }
        ASSERT_GT(checked, 1000);
    }
}

TEST(dynamics, basin_ball) {
    CodingMap steane(steane_code());
    double k = estimate_second_derivative_bound(steane, 1000, 7);
    ASSERT_GT(k, 0);
    double radius = basin_ball_radius(steane, k);
    ASSERT_NEAR(radius, 1 / k, 1e-15);
    // Every sampled channel in the ball intersected with the tetrahedron
    // converges.
    std::mt19937_64 rng(62);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u;
    int accepted = 0;
    while (accepted < 100) {
        Vec3 dir{g(rng), g(rng), g(rng)};
        double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
        double r = radius * std::cbrt(u(rng));
        Vec3 p{1 + r * dir[0] / norm, 1 + r * dir[1] / norm, 1 + r * dir[2] / norm};
        if (!in_tetrahedron(p, 0)) {
            continue;
        }
        accepted++;
        ASSERT_TRUE(converges(steane, p)) << DiagonalChannel(p);
    }
    for (const char *name : {"five_qubit", "shor9"}) {
        CodingMap map = resolve_coding_map(name);
        ASSERT_GT(basin_ball_radius(map, estimate_second_derivative_bound(map, 200, 1)), 0);
    }
    ASSERT_THROW(basin_ball_radius(resolve_coding_map("bf3"), 1.0), UnsupportedError);
    ASSERT_THROW(basin_ball_radius(steane, 0.0), std::invalid_argument);
    ASSERT_EQ(estimate_second_derivative_bound(steane, 50, 3), estimate_second_derivative_bound(steane, 50, 3));
}

TEST(dynamics, nondiag_bounds) {
    BoundsReport rep = nondiag_bounds(steane_code(), 0.01);
    ASSERT_EQ(rep.generic_bound, 4096);
    ASSERT_EQ(rep.css_bound, 512);
    ASSERT_LE(rep.c_d, 512);
    ASSERT_NEAR(rep.eps0, std::sqrt(1.0 / 512), 1e-15);
    ASSERT_EQ(rep.distance, 3u);
    ASSERT_EQ(rep.m, 4u);
    ASSERT_LE(rep.coefficient_sum_bound, rep.generic_bound);

    BoundsReport zero = nondiag_bounds(steane_code(), 0.0, {0.95, 0.95, 0.95}, 4);
    CodingMap steane(steane_code());
    Vec3 plain{0.95, 0.95, 0.95};
    for (size_t i = 1; i <= 4; i++) {
        ASSERT_EQ(zero.a[i], 0.0);
        ASSERT_EQ(zero.b[i], 0.0);
        plain = steane.evaluate_diagonal(plain);
        for (size_t k = 0; k < 3; k++) {
            ASSERT_NEAR(zero.lower[i][k], plain[k], 1e-15);
        }
    }
    ASSERT_THROW(nondiag_bounds(bit_flip_code(3), 0.1), UnsupportedError);
    ASSERT_THROW(nondiag_bounds(steane_code(), -1), std::invalid_argument);
}

TEST(dynamics, nondiag_bounds_decrease_below_eps0) {
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (const auto &code : {steane_code(), five_qubit_code()}) {
        double eps0 = nondiag_bounds(code, 0).eps0;
        for (int k = 0; k < 100; k++) {
            double eps = eps0 * u(rng);
            BoundsReport rep = nondiag_bounds(code, eps, {1, 1, 1}, 4);
            for (size_t i = 1; i < rep.a.size(); i++) {
                ASSERT_LT(rep.a[i], rep.a[i - 1]);
                ASSERT_GE(rep.a[i], 0);
            }
            for (size_t i = 2; i < rep.b.size(); i++) {
                ASSERT_LT(rep.b[i], rep.b[i - 1]);
            }
            // b_i = c_m a_{i-1}^m.
            for (size_t i = 1; i < rep.b.size(); i++) {
                ASSERT_NEAR(rep.b[i], rep.c_m * std::pow(rep.a[i - 1], static_cast<double>(rep.m)),
                            1e-12 * rep.b[i] + 1e-300);
            }
        }
    }
}

TEST(dynamics, empirical_off_diagonal_growth_is_bounded) {
    // The off-diagonal part of the image of diag + eps perturbation stays
    // below c_d eps^d for small eps.
    CodingMap steane(steane_code());
    BoundsReport rep = nondiag_bounds(steane_code(), 0.0);
    std::mt19937_64 rng(64);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 100; k++) {
        double eps = 1e-3;
        Vec3 d = oracle::random_diagonal(rng);
        Matrix4 m = Channel::diagonal(d[0], d[1], d[2]).matrix();
        for (size_t r = 1; r < 4; r++) {
            for (size_t c = 0; c < 4; c++) {
                if (r != c) {
                    m[r][c] = eps * u(rng);
                }
            }
        }
        Matrix4 g = steane.apply_general(m);
        for (size_t r = 1; r < 4; r++) {
            for (size_t c = 0; c < 4; c++) {
                if (r != c) {
                    ASSERT_LE(std::abs(g[r][c]), rep.c_d * std::pow(eps, 3));
                }
            }
        }
    }
}

TEST(dynamics, shifted_threshold) {
    ShiftedThreshold s0 = steane_shifted_threshold(0);
    ASSERT_NEAR(s0.x_c, kSteaneXc, 1e-6);
    ASSERT_NEAR(s0.threshold, kSteaneXc, 1e-6);
    ASSERT_NEAR(s0.slope, 1.691859, 1e-4);
    ASSERT_NEAR(s0.coefficient, 6.14726, 1e-4);
    ASSERT_NEAR(s0.coefficient, 63 * std::pow(s0.x_c, 3) / (4 * s0.slope), 1e-12);
    ASSERT_THROW(steane_shifted_threshold(0.4), std::invalid_argument);
    ASSERT_THROW(shifted_threshold(resolve_coding_map("shor9"), 0.1), UnsupportedError);

    ReducedRowMap f(CodingMap(steane_code()), RowAxis::X);
    for (double eps : {0.2, 0.3}) {
        ASSERT_TRUE(reduced_row_converges(f, {eps, kSteaneXc + 7 * std::pow(eps, 4), eps, eps})) << eps;
    }
    ASSERT_TRUE(reduced_row_converges(f, {0, 0.9, 0, 0}));
    ASSERT_FALSE(reduced_row_converges(f, {0, 0.85, 0, 0}));
}

TEST(dynamics, small_coordinates_decay) {
    ReducedRowMap f(CodingMap(steane_code()), RowAxis::X);
    DecayReport a = small_coordinates_decay(f, {0.5, 0.8, 0, 0}, kSteaneXc);
    ASSERT_TRUE(a.small_coordinates_decay);
    ASSERT_NEAR(a.final[0], 0.0, 1e-6);
    DecayReport b = small_coordinates_decay(f, {0, 0.95, 0, 0}, kSteaneXc);
    ASSERT_NEAR(b.final[1], 1.0, 1e-9);

    // The third coordinate grows on the first step (0.00723 to 0.00804)
    // through the b^2 c^2 d^2 term, then collapses with the rest.
    DecayReport c = small_coordinates_decay(f, {-0.642219, 0.566662, 0.007231, -0.516136}, kSteaneXc);
    ASSERT_FALSE(c.monotone);
    ASSERT_TRUE(c.reach_zero);

    std::mt19937_64 rng(65);
    std::normal_distribution<double> g;
    auto unit = [&](int zero) {
        Vec4 v{g(rng), g(rng), g(rng), g(rng)};
        if (zero >= 0) {
            v[zero] = 0;
        }
        double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
        for (double &e : v) {
            e /= norm;
        }
        return v;
    };
    for (int k = 0; k < 1000; k++) {
        DecayReport rep = small_coordinates_decay(f, unit(-1), kSteaneXc);
        ASSERT_LE(rep.survivors, 1u);
        ASSERT_TRUE(rep.reach_zero);
    }
    // With one coordinate at zero the decay is monotone as well.
    for (int k = 0; k < 1000; k++) {
        DecayReport rep = small_coordinates_decay(f, unit(k % 4), kSteaneXc);
        ASSERT_LE(rep.survivors, 1u);
        ASSERT_TRUE(rep.small_coordinates_decay);
    }
}
