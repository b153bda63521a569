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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qecdyn/errors.h"

namespace qecdyn {

std::string status_name(TrajectoryStatus status) {
    switch (status) {
        case TrajectoryStatus::converged_identity:
            return "converged_identity";
        case TrajectoryStatus::converged_other:
            return "converged_other";
        case TrajectoryStatus::not_converged:
            return "not_converged";
    }
    return "unknown";
}

namespace {

double step_size(const DiagonalChannel &a, const DiagonalChannel &b) {
    return std::max({std::abs(a.x() - b.x()), std::abs(a.y() - b.y()), std::abs(a.z() - b.z())});
}

double step_size(const Channel &a, const Channel &b) {
    double d = 0;
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            d = std::max(d, std::abs(a.at(r, c) - b.at(r, c)));
        }
    }
    return d;
}

bool near_identity(const DiagonalChannel &c, double tol) {
    return distance_to_identity(c) <= tol || two_point_check(c.to_channel(), tol);
}

bool near_identity(const Channel &c, double tol) {
    return distance_to_identity(c) <= tol || two_point_check(c, tol);
}

void check_iterate(const DiagonalChannel &, size_t) {
    // The DiagonalChannel constructor already enforces the tetrahedron.
}

void check_iterate(const Channel &c, size_t step) {
    ValidityReport report = validate(c);
    if (!report.ok()) {
        std::ostringstream s;
        s << c;
        throw IterationError("iterate " + std::to_string(step) + " is not a valid channel: " + report.str(), step,
                             s.str());
    }
}

template <typename T, typename Map>
Trajectory<T> run(const Map &map, const T &start, const IterateOptions &options) {
    Trajectory<T> traj;
    traj.points.push_back(start);
    for (size_t step = 1;; step++) {
        const T cur = traj.points.back();
        if (near_identity(cur, options.tol)) {
            traj.status = TrajectoryStatus::converged_identity;
            return traj;
        }
        if (step > options.max_iter) {
            traj.status = TrajectoryStatus::not_converged;
            return traj;
        }
        T next;
        try {
            next = map(cur);
        } catch (const IterationError &) {
            throw;
        } catch (const std::exception &e) {
            std::ostringstream s;
            s << cur;
            throw IterationError(
                "map failed at iterate " + std::to_string(step) + ": " + e.what(), step, s.str());
        }
        check_iterate(next, step);
        traj.points.push_back(next);
        if (step_size(cur, next) <= options.tol) {
            traj.status = near_identity(next, options.tol) ? TrajectoryStatus::converged_identity
                                                           : TrajectoryStatus::converged_other;
            return traj;
        }
    }
}

}  // namespace

Trajectory<DiagonalChannel> iterate(
    const std::function<DiagonalChannel(const DiagonalChannel &)> &map,
    const DiagonalChannel &start,
    const IterateOptions &options) {
    return run(map, start, options);
}

Trajectory<Channel> iterate(
    const std::function<Channel(const Channel &)> &map, const Channel &start, const IterateOptions &options) {
    return run(map, start, options);
}

Trajectory<DiagonalChannel> iterate(const CodingMap &map, const DiagonalChannel &start, const IterateOptions &options) {
    return run([&](const DiagonalChannel &c) { return map.apply_diagonal(c); }, start, options);
}

Trajectory<Channel> iterate(const CodingMap &map, const Channel &start, const IterateOptions &options) {
    return run([&](const Channel &c) { return map.apply_general(c); }, start, options);
}

Matrix jacobian(const VectorFunction &f, const std::vector<double> &point, double h) {
    if (!(h > 0) || !std::isfinite(h)) {
        throw std::invalid_argument("finite-difference step must be positive and finite");
    }
    size_t n = point.size();
    Matrix jac;
    for (size_t j = 0; j < n; j++) {
        std::vector<double> up = point;
        std::vector<double> down = point;
        up[j] += h;
        down[j] -= h;
        if (up[j] == point[j] || down[j] == point[j]) {
            throw std::invalid_argument("finite-difference step underflows at coordinate " + std::to_string(j));
        }
        std::vector<double> fu = f(up);
        std::vector<double> fd = f(down);
        if (jac.empty()) {
            jac.assign(fu.size(), std::vector<double>(n, 0.0));
        }
        for (size_t i = 0; i < fu.size(); i++) {
            jac[i][j] = (fu[i] - fd[i]) / (up[j] - down[j]);
        }
    }
    return jac;
}

Matrix jacobian_diagonal(const CodingMap &map, const Vec3 &point, double h) {
    return jacobian(
        [&](const std::vector<double> &v) {
            Vec3 out = map.evaluate_diagonal({v[0], v[1], v[2]});
            return std::vector<double>(out.begin(), out.end());
        },
        {point.begin(), point.end()},
        h);
}

Matrix jacobian_general(const CodingMap &map, const Channel &point, double h) {
    auto params = point.free_parameters();
    return jacobian(
        [&](const std::vector<double> &v) {
            Matrix4 m{};
            m[0][0] = 1.0;
            for (size_t r = 1; r < 4; r++) {
                for (size_t c = 0; c < 4; c++) {
                    m[r][c] = v[(r - 1) * 4 + c];
                }
            }
            Matrix4 g = map.apply_general(m);
            std::vector<double> out;
            for (size_t r = 1; r < 4; r++) {
                for (size_t c = 0; c < 4; c++) {
                    out.push_back(g[r][c]);
                }
            }
            return out;
        },
        {params.begin(), params.end()},
        h);
}

double max_abs(const Matrix &m) {
    double best = 0;
    for (const auto &row : m) {
        for (double v : row) {
            best = std::max(best, std::abs(v));
        }
    }
    return best;
}

double diagonal_threshold(const std::function<double(double)> &f, const ThresholdOptions &options) {
    if (options.scan_points < 2 || !(options.tol > 0)) {
        throw std::invalid_argument("threshold scan needs at least 2 points and a positive tolerance");
    }
    auto excess = [&](double x) { return f(x) - x; };
    size_t n = options.scan_points;
    // Walk down from the top so the first bracket found is the largest root.
    double hi = static_cast<double>(n - 1) / static_cast<double>(n);
    double f_hi = excess(hi);
    for (size_t i = n - 1; i >= 2; i--) {
        double lo = static_cast<double>(i - 1) / static_cast<double>(n);
        double f_lo = excess(lo);
        if (f_hi == 0.0) {
            return hi;
        }
        if ((f_lo < 0) != (f_hi < 0) || f_lo == 0.0) {
            if (f_lo == 0.0) {
                return lo;
            }
            while (hi - lo > options.tol) {
                double mid = 0.5 * (lo + hi);
                double f_mid = excess(mid);
                if ((f_mid < 0) == (f_lo < 0)) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        hi = lo;
        f_hi = f_lo;
    }
    return 0.0;
}

std::function<double(double)> component_function(const CodingMap &map, Letter sigma) {
    size_t idx;
    if (sigma == Letter::X) {
        idx = 0;
    } else if (sigma == Letter::Z) {
        idx = 2;
    } else {
        throw UnsupportedError("thresholds are defined for the X and Z components only");
    }
    auto at = [&](double v, double o1, double o2) {
        Vec3 p = idx == 0 ? Vec3{v, o1, o2} : Vec3{o1, o2, v};
        return map.evaluate_diagonal(p)[idx];
    };
    for (double v : {0.2, 0.55, 0.8, 0.95}) {
        double ref = at(v, v, v);
        for (auto [o1, o2] : {std::pair{0.0, 0.0}, {1.0, v}, {v, 1.0}, {-0.3, 0.4}}) {
            if (std::abs(at(v, o1, o2) - ref) > 1e-12) {
                throw UnsupportedError(
                    "component " + std::string(1, letter_char(sigma)) + " of '" + map.name() +
                    "' depends on the other diagonal entries; no one-variable threshold exists");
            }
        }
    }
    return [map, idx](double v) { return map.evaluate_diagonal({v, v, v})[idx]; };
}

bool css_basin_member(const DiagonalChannel &c, double threshold) {
    return c.x() > threshold && c.z() > threshold;
}

double estimate_second_derivative_bound(const CodingMap &map, size_t samples, uint64_t seed) {
    if (samples == 0) {
        throw std::invalid_argument("need at least one sample");
    }
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    const std::array<Vec3, 4> corners{Vec3{1, 1, 1}, Vec3{1, -1, -1}, Vec3{-1, 1, -1}, Vec3{-1, -1, 1}};
    const double h = 1e-4;
    double best = 0;
    for (size_t s = 0; s < samples; s++) {
        // Uniform point of the tetrahedron from Dirichlet(1,1,1,1) weights.
        std::array<double, 4> w;
        double total = 0;
        for (double &e : w) {
            e = expo(rng);
            total += e;
        }
        Vec3 p{};
        for (size_t c = 0; c < 4; c++) {
            for (size_t k = 0; k < 3; k++) {
                p[k] += w[c] / total * corners[c][k];
            }
        }
        double frob = 0;
        for (size_t j = 0; j < 3; j++) {
            for (size_t k = 0; k < 3; k++) {
                auto shifted = [&](double sj, double sk) {
                    Vec3 q = p;
                    q[j] += sj * h;
                    q[k] += sk * h;
                    return map.evaluate_diagonal(q);
                };
                Vec3 pp = shifted(1, 1), pm = shifted(1, -1), mp = shifted(-1, 1), mm = shifted(-1, -1);
                for (size_t i = 0; i < 3; i++) {
                    double hess = (pp[i] - pm[i] - mp[i] + mm[i]) / (4 * h * h);
                    frob += hess * hess;
                }
            }
        }
        best = std::max(best, std::sqrt(frob));
    }
    return 1.1 * best;
}

double basin_ball_radius(const CodingMap &map, double k_estimate) {
    if (!(k_estimate > 0) || !std::isfinite(k_estimate)) {
        throw std::invalid_argument("second-derivative bound must be positive and finite");
    }
    double lambda = max_abs(jacobian_diagonal(map, {1.0, 1.0, 1.0}));
    if (lambda > 1e-6) {
        throw UnsupportedError(
            "the Jacobian of '" + map.name() + "' at [1,1,1] is not zero (max entry " + format_number(lambda) +
            "); the basin ball bound does not apply");
    }
    return 1.0 / k_estimate;
}

BoundsReport nondiag_bounds(const StabilizerCode &code, double eps, const Vec3 &start, size_t levels) {
    if (!(eps >= 0) || !std::isfinite(eps)) {
        throw std::invalid_argument("off-diagonal magnitude must be non-negative and finite");
    }
    BoundsReport rep;
    rep.n = code.n();
    rep.checks = code.num_checks();
    rep.distance = code.distance();
    rep.m = code.min_stabilizer_weight();
    rep.eps = eps;
    if (rep.distance <= 1) {
        throw UnsupportedError("off-diagonal bounds need distance at least 2; '" + code.name() + "' has distance " +
                               std::to_string(rep.distance));
    }
    CodingMap map(code);
    const CodingMapEvaluator &ev = map.single();
    double checks = static_cast<double>(rep.checks);
    rep.generic_bound = std::pow(4.0, checks);
    double widest = 0;
    for (Letter sigma : kAllLetters) {
        const SparseColumn &col = ev.decoder(sigma);
        double sum = 0;
        for (size_t i = 0; i < col.terms.size(); i++) {
            sum += std::abs(col.coefficient(i));
        }
        widest = std::max(widest, sum);
    }
    rep.coefficient_sum_bound = std::min(rep.generic_bound, std::pow(2.0, checks) * widest);
    if (code.is_css()) {
        rep.css_bound = std::pow(2.0, 1.5 * checks);
        rep.c_d = rep.css_bound;
    } else {
        rep.c_d = rep.coefficient_sum_bound;
    }
    rep.c_m = rep.c_d;
    double d = static_cast<double>(rep.distance);
    double m = static_cast<double>(rep.m);
    rep.eps0 = std::pow(1.0 / rep.c_d, 1.0 / (d - 1.0));
    double ratio = eps / rep.eps0;
    rep.b.push_back(0.0);
    rep.lower.push_back(start);
    for (size_t i = 0; i <= levels; i++) {
        rep.a.push_back(rep.eps0 * std::pow(ratio, std::pow(d, static_cast<double>(i))));
        if (i >= 1) {
            double b = rep.c_m * std::pow(rep.eps0, m) * std::pow(ratio, m * std::pow(d, static_cast<double>(i - 1)));
            rep.b.push_back(b);
            Vec3 next = map.evaluate_diagonal(rep.lower.back());
            for (double &v : next) {
                v -= b;
            }
            rep.lower.push_back(next);
        }
    }
    return rep;
}

ShiftedThreshold shifted_threshold(const CodingMap &map, double eps) {
    if (map.is_composite() || !map.is_css()) {
        throw UnsupportedError("the shifted threshold estimate needs a single CSS code");
    }
    auto f = component_function(map, Letter::X);
    ShiftedThreshold out{};
    out.x_c = diagonal_threshold(f);
    double h = 1e-6;
    out.slope = (f(out.x_c + h) - f(out.x_c - h)) / (2 * h);
    // Leading eps^4 loss of G_XX: monomials N_XX^3 times a fourth power of one
    // of the other three row entries.
    RowPolynomial poly = map.single().row_polynomial(Letter::X, Letter::X);
    double loss = 0;
    for (const auto &mono : poly.terms) {
        const auto &e = mono.exponents;
        unsigned others = e[0] + e[2] + e[3];
        bool single_fourth = others == 4 && (e[0] == 4 || e[2] == 4 || e[3] == 4);
        if (e[1] == 3 && single_fourth) {
            loss += std::abs(static_cast<double>(mono.numerator) / static_cast<double>(poly.denominator));
        }
    }
    out.coefficient = loss * out.x_c * out.x_c * out.x_c / out.slope;
    out.threshold = out.x_c + out.coefficient * std::pow(eps, 4);
    return out;
}

ShiftedThreshold steane_shifted_threshold(double eps) {
    if (!(eps >= 0) || eps > 0.3) {
        throw std::invalid_argument("the shifted-threshold estimate is meant for 0 <= eps <= 0.3");
    }
    static const CodingMap steane(steane_code());
    return shifted_threshold(steane, eps);
}

bool reduced_row_converges(const ReducedRowMap &f, Vec4 v, size_t max_iter, double tol) {
    for (size_t i = 0; i < max_iter; i++) {
        if (std::abs(v[1] - 1.0) <= tol) {
            return true;
        }
        Vec4 next = f(v);
        double change = 0;
        for (size_t k = 0; k < 4; k++) {
            if (!std::isfinite(next[k]) || std::abs(next[k]) > 1e6) {
                return false;
            }
            change = std::max(change, std::abs(next[k] - v[k]));
        }
        v = next;
        if (change <= tol) {
            break;
        }
    }
    return std::abs(v[1] - 1.0) <= tol;
}

double empirical_shifted_boundary(const ReducedRowMap &f, double eps, double lo, double hi, double tol) {
    auto converges = [&](double a) { return reduced_row_converges(f, {eps, a, eps, eps}); };
    if (converges(lo) || !converges(hi)) {
        throw std::invalid_argument("boundary bracket does not straddle the convergence region");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (converges(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

DecayReport small_coordinates_decay(const ReducedRowMap &f, const Vec4 &v, double x_c, size_t max_iter) {
    DecayReport rep;
    std::array<bool, 4> tracked{};
    for (size_t k = 0; k < 4; k++) {
        tracked[k] = std::abs(v[k]) < x_c;
    }
    Vec4 cur = v;
    for (size_t i = 0; i < max_iter; i++) {
        Vec4 next = f(cur);
        double change = 0;
        for (size_t k = 0; k < 4; k++) {
            if (tracked[k] && std::abs(next[k]) > std::abs(cur[k]) + 1e-15) {
                rep.monotone = false;
            }
            change = std::max(change, std::abs(next[k] - cur[k]));
        }
        cur = next;
        if (change <= 1e-15) {
            break;
        }
    }
    rep.final = cur;
    for (size_t k = 0; k < 4; k++) {
        if (tracked[k] && std::abs(cur[k]) > 1e-6) {
            rep.reach_zero = false;
        }
        if (std::abs(cur[k]) > 1e-6) {
            rep.survivors++;
        }
    }
    rep.small_coordinates_decay = rep.reach_zero && rep.monotone;
    return rep;
}

}  // namespace qecdyn
