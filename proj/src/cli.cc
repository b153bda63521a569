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

#include "qecdyn/cli.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qecdyn/canonical.h"
#include "qecdyn/coding_map.h"
#include "qecdyn/dynamics.h"
#include "qecdyn/errors.h"

namespace qecdyn {

using nlohmann::json;

std::string format_rational(int64_t numerator, int64_t denominator) {
    if (denominator == 0) {
        throw std::invalid_argument("zero denominator");
    }
    int64_t g = std::gcd(numerator, denominator);
    if (g == 0) {
        g = 1;
    }
    int64_t p = numerator / g;
    int64_t q = denominator / g;
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

namespace {

struct Config {
    std::string code;
    std::string channel;
    double eps = 0.0;
    double faulty_eps = 0.0;
    double tol = 1e-10;
    size_t max_iter = 200;
    size_t grid = 20;
    size_t levels = 5;
    size_t samples = 1000;
    uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    std::string row;
};

AnyChannel read_channel(const std::string &spec) {
    if (spec.empty()) {
        throw std::invalid_argument("--channel is required");
    }
    std::string text = spec;
    size_t first = spec.find_first_not_of(" \t\n");
    if (first == std::string::npos || (spec[first] != '{' && spec[first] != '[')) {
        std::ifstream in(spec);
        if (!in) {
            throw std::invalid_argument("cannot open channel file '" + spec + "'");
        }
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("channel is not valid JSON: ") + e.what());
    }
    AnyChannel c = channel_from_json(j);
    if (auto *general = std::get_if<Channel>(&c)) {
        ValidityReport report = validate(*general);
        if (!report.ok()) {
            throw std::invalid_argument("input channel is invalid: " + report.str());
        }
    }
    return c;
}

void emit_json(std::ostream &out, const json &j) {
    out << j.dump(2) << "\n";
}

void cmd_threshold(const Config &cfg, std::ostream &out) {
    CodingMap map = resolve_coding_map(cfg.code);
    ThresholdOptions opts;
    json rec{{"code", map.name()}, {"tolerance", opts.tol}};
    json list = json::array();
    for (Letter sigma : {Letter::X, Letter::Z}) {
        double t = diagonal_threshold(component_function(map, sigma), opts);
        std::string key = sigma == Letter::X ? "x_c" : "z_c";
        rec[key] = round_sig9(t);
        list.push_back({{"code", map.name()},
                        {"component", std::string(1, letter_char(sigma))},
                        {"threshold", round_sig9(t)},
                        {"tolerance", opts.tol}});
    }
    rec["thresholds"] = list;
    if (cfg.format == "csv") {
        out << "code,component,threshold,tolerance\n";
        for (const auto &e : list) {
            out << map.name() << "," << e["component"].get<std::string>() << ","
                << format_number(e["threshold"].get<double>()) << "," << format_number(opts.tol) << "\n";
        }
        return;
    }
    emit_json(out, rec);
}

template <typename T>
void emit_trajectory(const Config &cfg, const Trajectory<T> &traj, std::ostream &out) {
    if (cfg.format == "csv") {
        out << "step," << csv_header(traj.points.front()) << "\n";
        for (size_t i = 0; i < traj.points.size(); i++) {
            out << i << "," << csv_row(traj.points[i]) << "\n";
        }
        out << "# status=" << status_name(traj.status) << " iterations=" << traj.iterations() << "\n";
        return;
    }
    json points = json::array();
    for (const auto &p : traj.points) {
        points.push_back(to_json(p));
    }
    emit_json(out, {{"status", status_name(traj.status)}, {"iterations", traj.iterations()}, {"points", points}});
}

void cmd_iterate(const Config &cfg, std::ostream &out) {
    CodingMap map = resolve_coding_map(cfg.code);
    AnyChannel start = read_channel(cfg.channel);
    IterateOptions opts{cfg.tol, cfg.max_iter};
    double eps = cfg.faulty_eps;
    if (auto *d = std::get_if<DiagonalChannel>(&start)) {
        auto step = [&](const DiagonalChannel &c) { return faulty_map(map, c, eps); };
        emit_trajectory(cfg, iterate(step, *d, opts), out);
    } else {
        auto step = [&](const Channel &c) { return faulty_map(map, c, eps); };
        emit_trajectory(cfg, iterate(step, std::get<Channel>(start), opts), out);
    }
}

void cmd_basin_scan(const Config &cfg, std::ostream &out) {
    if (cfg.grid < 2) {
        throw std::invalid_argument("--grid must be at least 2");
    }
    CodingMap map = resolve_coding_map(cfg.code);
    IterateOptions opts{cfg.tol, cfg.max_iter};
    double eps = cfg.faulty_eps;
    auto step = [&](const DiagonalChannel &c) { return faulty_map(map, c, eps); };
    size_t g = cfg.grid;
    auto coord = [&](size_t i) {
        return static_cast<double>(2 * static_cast<int64_t>(i) - static_cast<int64_t>(g - 1)) /
               static_cast<double>(g - 1);
    };
    out << "x,y,z,converged,iterations\n";
    for (size_t i = 0; i < g; i++) {
        for (size_t j = 0; j < g; j++) {
            for (size_t k = 0; k < g; k++) {
                Vec3 p{coord(i), coord(j), coord(k)};
                if (!in_tetrahedron(p, 1e-12)) {
                    continue;
                }
                auto traj = iterate(step, DiagonalChannel(p), opts);
                bool ok = traj.status == TrajectoryStatus::converged_identity;
                out << format_number(p[0]) << "," << format_number(p[1]) << "," << format_number(p[2]) << ","
                    << (ok ? 1 : 0) << "," << traj.iterations() << "\n";
            }
        }
    }
}

void cmd_basin_radius(const Config &cfg, std::ostream &out) {
    CodingMap map = resolve_coding_map(cfg.code);
    double k = estimate_second_derivative_bound(map, cfg.samples, cfg.seed);
    double radius = basin_ball_radius(map, k);
    emit_json(out, {{"code", map.name()},
                    {"k_estimate", round_sig9(k)},
                    {"radius", round_sig9(radius)},
                    {"samples", cfg.samples},
                    {"seed", cfg.seed},
                    {"certified", false}});
}

void cmd_canonicalize(const Config &cfg, std::ostream &out) {
    AnyChannel input = read_channel(cfg.channel);
    Channel c = std::holds_alternative<Channel>(input) ? std::get<Channel>(input)
                                                        : std::get<DiagonalChannel>(input).to_channel();
    CanonicalForm cf = svd_canonical(c);
    json j = to_json(cf);
    if (!cfg.code.empty()) {
        CodingMap map = resolve_coding_map(cfg.code);
        CanonicalConvergence conv = canonical_convergence(map, cf);
        json rep{{"code", map.name()},
                 {"converges_as_x", conv.converges_as_x},
                 {"converges_as_z", conv.converges_as_z},
                 {"correctable", conv.correctable}};
        if (conv.correctable) {
            rep["axis_to_x"] = conv.axis_to_x;
            rep["axis_to_z"] = conv.axis_to_z;
            rep["a"] = conv.a;
            rep["b"] = conv.b;
            rep["transformed"] = to_json(*conv.transformed)["ptm"];
        }
        j["convergence"] = rep;
    }
    emit_json(out, j);
}

void cmd_map_dump(const Config &cfg, std::ostream &out) {
    CodingMap map = resolve_coding_map(cfg.code);
    if (map.is_composite()) {
        throw UnsupportedError("map-dump prints the polynomials of a single code; '" + map.name() +
                               "' is a composition");
    }
    const CodingMapEvaluator &ev = map.single();
    json rows = json::array();
    bool csv = cfg.format == "csv";
    if (cfg.row.empty()) {
        if (!csv) {
            out << "# component exponent_x exponent_y exponent_z coefficient\n";
        }
        for (Letter sigma : kNonIdentityLetters) {
            const DiagonalPolynomial &p = ev.diagonal_polynomial(sigma);
            for (const auto &m : p.terms) {
                std::string coef = format_rational(m.numerator, p.denominator);
                out << letter_char(sigma) << (csv ? "," : " ") << m.exponents[0] << (csv ? "," : " ")
                    << m.exponents[1] << (csv ? "," : " ") << m.exponents[2] << (csv ? "," : " ") << coef << "\n";
            }
        }
        return;
    }
    if (cfg.row.size() != 1) {
        throw std::invalid_argument("--row must be one of X, Y, Z");
    }
    Letter row = letter_from_char(cfg.row[0]);
    if (row == Letter::I) {
        throw std::invalid_argument("--row must be one of X, Y, Z");
    }
    char r = letter_char(row);
    if (!csv) {
        out << "# component e_" << r << "I e_" << r << "X e_" << r << "Y e_" << r << "Z coefficient\n";
    }
    for (Letter col : kAllLetters) {
        RowPolynomial p = ev.row_polynomial(row, col);
        for (const auto &m : p.terms) {
            std::string sep = csv ? "," : " ";
            out << r << letter_char(col);
            for (unsigned e : m.exponents) {
                out << sep << e;
            }
            out << sep << format_rational(m.numerator, p.denominator) << "\n";
        }
    }
}

void cmd_bounds(const Config &cfg, std::ostream &out) {
    CodingMap map = resolve_coding_map(cfg.code);
    BoundsReport rep = nondiag_bounds(map.single().code(), cfg.eps, {1.0, 1.0, 1.0}, cfg.levels);
    auto rounded = [](const std::vector<double> &v) {
        json a = json::array();
        for (double x : v) {
            a.push_back(round_sig9(x));
        }
        return a;
    };
    json lower = json::array();
    for (const auto &l : rep.lower) {
        lower.push_back({round_sig9(l[0]), round_sig9(l[1]), round_sig9(l[2])});
    }
    emit_json(out, {{"code", map.name()},
                    {"n", rep.n},
                    {"distance", rep.distance},
                    {"m", rep.m},
                    {"generic_bound", round_sig9(rep.generic_bound)},
                    {"coefficient_sum_bound", round_sig9(rep.coefficient_sum_bound)},
                    {"css_bound", round_sig9(rep.css_bound)},
                    {"c_d", round_sig9(rep.c_d)},
                    {"c_m", round_sig9(rep.c_m)},
                    {"eps", round_sig9(rep.eps)},
                    {"eps0", round_sig9(rep.eps0)},
                    {"a", rounded(rep.a)},
                    {"b", rounded(rep.b)},
                    {"lower", lower}});
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Coding maps of stabilizer codes as dynamical systems on single-qubit channels", "qecdyn"};
    app.require_subcommand(1);
    Config cfg;

    auto add_code = [&](CLI::App *sub) {
        sub->add_option("code_pos", cfg.code, "Code: built-in name, A*B composition, or code file");
        sub->add_option("--code", cfg.code, "Same as the positional code argument");
    };
    auto add_output = [&](CLI::App *sub) {
        sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_iteration = [&](CLI::App *sub) {
        sub->add_option("--tol", cfg.tol, "Convergence tolerance (max-norm)")->check(CLI::PositiveNumber);
        sub->add_option("--max-iter", cfg.max_iter, "Maximum number of iterations");
        sub->add_option("--faulty-eps", cfg.faulty_eps, "Gate noise rate mixed in after every level")
            ->check(CLI::Range(0.0, 1.0));
    };

    CLI::App *threshold = app.add_subcommand("threshold", "Critical values of the X and Z components");
    add_code(threshold);
    add_output(threshold);

    CLI::App *iter = app.add_subcommand("iterate", "Iterate the coding map from a channel");
    add_code(iter);
    add_output(iter);
    add_iteration(iter);
    iter->add_option("--channel", cfg.channel, "Channel JSON (inline or file)")->required();

    CLI::App *basin = app.add_subcommand("basin-scan", "Convergence over a grid of diagonal channels");
    add_code(basin);
    add_output(basin);
    add_iteration(basin);
    basin->add_option("--grid", cfg.grid, "Grid points per axis (>= 2)");

    CLI::App *radius = app.add_subcommand("basin-radius", "Sampled basin ball radius around the identity");
    add_code(radius);
    add_output(radius);
    radius->add_option("--samples", cfg.samples, "Number of sample points");
    radius->add_option("--seed", cfg.seed, "Random seed");

    CLI::App *canon = app.add_subcommand("canonicalize", "SVD canonical form of a channel");
    add_code(canon);
    add_output(canon);
    canon->add_option("--channel", cfg.channel, "Channel JSON (inline or file)")->required();

    CLI::App *dump = app.add_subcommand("map-dump", "Exact polynomial coefficients of a coding map");
    add_code(dump);
    add_output(dump);
    dump->add_option("--row", cfg.row, "Dump row polynomials of this row instead of the diagonal map");

    CLI::App *bounds = app.add_subcommand("bounds", "Off-diagonal convergence bounds");
    add_code(bounds);
    add_output(bounds);
    bounds->add_option("--eps", cfg.eps, "Off-diagonal magnitude")->check(CLI::NonNegativeNumber);
    bounds->add_option("--levels", cfg.levels, "Number of concatenation levels");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    std::ostringstream buffer;
    try {
        CLI::App *sub = app.get_subcommands().front();
        std::string name = sub->get_name();
        if (cfg.code.empty() && name != "canonicalize") {
            throw std::invalid_argument("a code is required");
        }
        if (name == "threshold") {
            cmd_threshold(cfg, buffer);
        } else if (name == "iterate") {
            cmd_iterate(cfg, buffer);
        } else if (name == "basin-scan") {
            cmd_basin_scan(cfg, buffer);
        } else if (name == "basin-radius") {
            cmd_basin_radius(cfg, buffer);
        } else if (name == "canonicalize") {
            cmd_canonicalize(cfg, buffer);
        } else if (name == "map-dump") {
            cmd_map_dump(cfg, buffer);
        } else {
            cmd_bounds(cfg, buffer);
        }
    } catch (const UnsupportedError &e) {
        err << "unsupported: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::invalid_argument &e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const IterationError &e) {
        err << "invalid iterate: " << e.what() << " (" << e.iterate << ")\n";
        return kExitInvalid;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (cfg.out.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.out);
        if (!file) {
            err << "invalid input: cannot write '" << cfg.out << "'\n";
            return kExitInvalid;
        }
        file << buffer.str();
    }
    return kExitOk;
}

}  // namespace qecdyn
