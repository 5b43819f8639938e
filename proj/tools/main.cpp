// ribbonlim command line tool. Subcommands cover the main library entry
// points: relaxation constants, reduced-density tables, spontaneous
// profiles, 3D reconstruction, corrugated fields, and the seeded
// validation suites. Configuration comes from an optional JSON document
// (--config) with individual flags taking precedence; every report embeds
// the resolved configuration as sorted `# key=value` comment lines so a
// run can be reproduced from its own output.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ribbonlim/errors.hpp"
#include "ribbonlim/frames.hpp"
#include "ribbonlim/geometry.hpp"
#include "ribbonlim/io.hpp"
#include "ribbonlim/parallel.hpp"
#include "ribbonlim/quadratic_forms.hpp"
#include "ribbonlim/reduced_density.hpp"
#include "ribbonlim/relaxation.hpp"
#include "ribbonlim/surface.hpp"
#include "ribbonlim/variational.hpp"

namespace {

using nlohmann::json;
using namespace ribbonlim;

struct Settings {
    std::string rigidity_kind = "isotropic";
    double k_mu = 1.0, k_lambda = 0.0;
    double k11 = 1.0, k12 = 0.0, k22 = 1.0, k33 = 0.25;
    std::vector<double> voigt = {2.0, 1.0, 0.0, 2.0, 0.0, 0.5};

    std::string chart_kind = "rectangle";
    double length = 1.0;
    int intervals = 200;
    double kappa0 = 0.5;
    double d12 = 0.3, d22 = 1.2;
    std::string chart_file;

    double ao11 = 0.0, ao12 = 0.0, ao22 = 0.0;
    std::string natural_file;

    double mu_min = -3.0, mu_max = 3.0;
    int mu_count = 61;
    double tau_min = -3.0, tau_max = 3.0;
    int tau_count = 61;
    double at_t = 0.0;

    double half_width = 0.05;
    int width_samples = 9;
    double margin = 0.5;
    int cells = 64;

    unsigned long long seed = 1;
    std::string output;
    std::string profile_file;
    std::string emit_centerline;
    std::string emit_mesh;
    std::string flat_output;
};

// ---------------------------------------------------------------------------
// JSON configuration
// ---------------------------------------------------------------------------

double read_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw InputError("config key " + key + ": expected a number");
    return v.get<double>();
}

int read_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw InputError("config key " + key + ": expected an integer");
    return v.get<int>();
}

std::string read_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw InputError("config key " + key + ": expected a string");
    return v.get<std::string>();
}

void apply_json(Settings& s, const json& doc) {
    if (!doc.is_object()) throw InputError("config: top level must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "rigidity") {
            for (const auto& [k, v] : value.items()) {
                const std::string q = "rigidity." + k;
                if (k == "kind") s.rigidity_kind = read_string(v, q);
                else if (k == "k_mu") s.k_mu = read_number(v, q);
                else if (k == "k_lambda") s.k_lambda = read_number(v, q);
                else if (k == "k11") s.k11 = read_number(v, q);
                else if (k == "k12") s.k12 = read_number(v, q);
                else if (k == "k22") s.k22 = read_number(v, q);
                else if (k == "k33") s.k33 = read_number(v, q);
                else if (k == "voigt") {
                    if (!v.is_array() || v.size() != 6)
                        throw InputError("config key rigidity.voigt: expected 6 numbers");
                    for (std::size_t i = 0; i < 6; ++i) s.voigt[i] = read_number(v[i], q);
                } else throw InputError("config: unknown key rigidity." + k);
            }
        } else if (key == "chart") {
            for (const auto& [k, v] : value.items()) {
                const std::string q = "chart." + k;
                if (k == "kind") s.chart_kind = read_string(v, q);
                else if (k == "length") s.length = read_number(v, q);
                else if (k == "intervals") s.intervals = read_int(v, q);
                else if (k == "kappa0") s.kappa0 = read_number(v, q);
                else if (k == "d12") s.d12 = read_number(v, q);
                else if (k == "d22") s.d22 = read_number(v, q);
                else if (k == "file") s.chart_file = read_string(v, q);
                else throw InputError("config: unknown key chart." + k);
            }
        } else if (key == "natural") {
            for (const auto& [k, v] : value.items()) {
                const std::string q = "natural." + k;
                if (k == "Ao11") s.ao11 = read_number(v, q);
                else if (k == "Ao12") s.ao12 = read_number(v, q);
                else if (k == "Ao22") s.ao22 = read_number(v, q);
                else if (k == "file") s.natural_file = read_string(v, q);
                else throw InputError("config: unknown key natural." + k);
            }
        } else if (key == "grid") {
            for (const auto& [k, v] : value.items()) {
                const std::string q = "grid." + k;
                if (k == "mu_min") s.mu_min = read_number(v, q);
                else if (k == "mu_max") s.mu_max = read_number(v, q);
                else if (k == "mu_count") s.mu_count = read_int(v, q);
                else if (k == "tau_min") s.tau_min = read_number(v, q);
                else if (k == "tau_max") s.tau_max = read_number(v, q);
                else if (k == "tau_count") s.tau_count = read_int(v, q);
                else if (k == "t") s.at_t = read_number(v, q);
                else throw InputError("config: unknown key grid." + k);
            }
        } else if (key == "surface") {
            for (const auto& [k, v] : value.items()) {
                const std::string q = "surface." + k;
                if (k == "half_width") s.half_width = read_number(v, q);
                else if (k == "width_samples") s.width_samples = read_int(v, q);
                else if (k == "margin") s.margin = read_number(v, q);
                else if (k == "cells") s.cells = read_int(v, q);
                else throw InputError("config: unknown key surface." + k);
            }
        } else if (key == "seed") {
            if (!value.is_number_integer() || value.get<long long>() < 0)
                throw InputError("config key seed: expected a non-negative integer");
            s.seed = value.get<unsigned long long>();
        } else if (key == "output") {
            s.output = read_string(value, "output");
        } else if (key == "profile") {
            s.profile_file = read_string(value, "profile");
        } else {
            throw InputError("config: unknown key " + key);
        }
    }
}

// ---------------------------------------------------------------------------
// Resolved objects and the report header
// ---------------------------------------------------------------------------

Rigidity make_rigidity(const Settings& s) {
    if (s.rigidity_kind == "isotropic") return Rigidity::isotropic(s.k_mu, s.k_lambda);
    if (s.rigidity_kind == "orthotropic") return Rigidity::orthotropic(s.k11, s.k12, s.k22, s.k33);
    if (s.rigidity_kind == "voigt") {
        const auto& v = s.voigt;
        return Rigidity::from_voigt(v[0], v[1], v[2], v[3], v[4], v[5]);
    }
    throw InputError("rigidity.kind: expected isotropic, orthotropic or voigt, got '" +
                     s.rigidity_kind + "'");
}

NaturalCurvature make_natural(const Settings& s) {
    if (!s.natural_file.empty()) return read_natural_csv(s.natural_file);
    if (s.ao11 == 0.0 && s.ao12 == 0.0 && s.ao22 == 0.0) return NaturalCurvature::zero();
    return NaturalCurvature::constant(SymMat2{s.ao11, s.ao12, s.ao22});
}

ReferenceChart make_chart(const Settings& s) {
    if (s.chart_kind == "sampled") {
        if (s.chart_file.empty())
            throw InputError("chart.file: required when chart.kind is sampled");
        return read_chart_csv(s.chart_file);
    }
    if (!s.chart_file.empty())
        throw InputError("chart.file: only valid with chart.kind=sampled");
    if (s.intervals < 2) throw InputError("chart.intervals: must be >= 2");
    const int nodes = s.intervals + 1;
    const NaturalCurvature natural = make_natural(s);
    if (s.chart_kind == "rectangle") return ReferenceChart::rectangle(s.length, nodes, natural);
    if (s.chart_kind == "arc") return ReferenceChart::arc(s.length, s.kappa0, nodes, natural);
    if (s.chart_kind == "sheared")
        return ReferenceChart::sheared(s.length, s.d12, s.d22, nodes, natural);
    throw InputError("chart.kind: expected rectangle, arc, sheared or sampled, got '" +
                     s.chart_kind + "'");
}

using Header = std::vector<std::pair<std::string, std::string>>;

void put(Header& h, const std::string& key, const std::string& value) {
    h.emplace_back(key, value);
}
void put(Header& h, const std::string& key, double value) {
    h.emplace_back(key, format_double(value));
}
void put(Header& h, const std::string& key, int value) {
    h.emplace_back(key, std::to_string(value));
}

void add_rigidity_keys(Header& h, const Settings& s) {
    put(h, "rigidity.kind", s.rigidity_kind);
    if (s.rigidity_kind == "isotropic") {
        put(h, "rigidity.k_mu", s.k_mu);
        put(h, "rigidity.k_lambda", s.k_lambda);
    } else if (s.rigidity_kind == "orthotropic") {
        put(h, "rigidity.k11", s.k11);
        put(h, "rigidity.k12", s.k12);
        put(h, "rigidity.k22", s.k22);
        put(h, "rigidity.k33", s.k33);
    } else {
        std::string joined;
        for (std::size_t i = 0; i < s.voigt.size(); ++i)
            joined += (i ? ";" : "") + format_double(s.voigt[i]);
        put(h, "rigidity.voigt", joined);
    }
}

void add_chart_keys(Header& h, const Settings& s) {
    put(h, "chart.kind", s.chart_kind);
    if (s.chart_kind == "sampled") {
        put(h, "chart.file", s.chart_file);
        return;
    }
    put(h, "chart.length", s.length);
    put(h, "chart.intervals", s.intervals);
    if (s.chart_kind == "arc") put(h, "chart.kappa0", s.kappa0);
    if (s.chart_kind == "sheared") {
        put(h, "chart.d12", s.d12);
        put(h, "chart.d22", s.d22);
    }
    if (!s.natural_file.empty()) {
        put(h, "natural.file", s.natural_file);
    } else {
        put(h, "natural.Ao11", s.ao11);
        put(h, "natural.Ao12", s.ao12);
        put(h, "natural.Ao22", s.ao22);
    }
}

void add_surface_keys(Header& h, const Settings& s) {
    put(h, "surface.half_width", s.half_width);
    put(h, "surface.width_samples", s.width_samples);
    put(h, "surface.margin", s.margin);
    put(h, "surface.cells", s.cells);
}

// Prints to stdout when no output path is configured.
void emit_table(const std::string& path, const Table& table) {
    if (path.empty())
        std::cout << render_table(table);
    else
        write_table(path, table);
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        v[static_cast<std::size_t>(i)] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
    return v;
}

int nearest_node(const ReferenceChart& chart, double t) {
    int best = 0;
    double dist = std::abs(chart.node(0).t - t);
    for (int i = 1; i < chart.node_count(); ++i) {
        const double d = std::abs(chart.node(i).t - t);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

struct Profile {
    std::vector<double> mu, tau;
};

// Profile from file when configured, otherwise the free minimizer.
Profile resolve_profile(const Settings& s, const ReducedDensity& density,
                        const ReferenceChart& chart) {
    Profile p;
    if (s.profile_file.empty()) {
        const auto points = spontaneous_profile(density, chart);
        for (const auto& pt : points) {
            p.mu.push_back(pt.mu);
            p.tau.push_back(pt.tau);
        }
        return p;
    }
    const ProfileSamples samples = read_profile_csv(s.profile_file);
    if (static_cast<int>(samples.t.size()) != chart.node_count())
        throw InputError("profile: " + s.profile_file + " has " +
                         std::to_string(samples.t.size()) + " rows but the chart has " +
                         std::to_string(chart.node_count()) + " nodes");
    for (int i = 0; i < chart.node_count(); ++i) {
        const double tc = chart.node(i).t;
        if (std::abs(samples.t[static_cast<std::size_t>(i)] - tc) >
            1e-9 * std::max(1.0, std::abs(tc)))
            throw InputError("profile: t column does not match the chart grid at row " +
                             std::to_string(i));
    }
    p.mu = samples.mu;
    p.tau = samples.tau;
    return p;
}

// corrugate -> rank-one factorization -> frame integration -> ruled mesh,
// written as OBJ plus the flat-coordinate companion table.
void write_mesh_outputs(const Settings& s, const ReducedDensity& density,
                        const ReferenceChart& chart, const Profile& profile,
                        const std::string& obj_path, Header header) {
    const auto field = corrugate(density, chart, profile.mu, profile.tau, s.cells);
    const auto rank = rank_one_field(chart, field);
    const auto bound = width_bound(chart, rank, s.margin, s.half_width);
    const auto coeffs = adapted_coefficients(chart, rank);

    std::vector<double> ts(static_cast<std::size_t>(chart.node_count()));
    for (int i = 0; i < chart.node_count(); ++i) ts[static_cast<std::size_t>(i)] = chart.node(i).t;
    const FramePath path = integrate_frames(ts, coeffs);
    const RibbonMesh mesh =
        ruled_surface(path, rank, chart, bound.half_width, s.width_samples, s.margin);

    put(header, "surface.used_half_width", mesh.half_width);
    write_obj(obj_path, mesh, header);

    Table flat;
    flat.config = header;
    flat.columns = {"t", "s", "Phi1", "Phi2"};
    for (int it = 0; it < mesh.nt; ++it) {
        for (int is = 0; is < mesh.ns; ++is) {
            const double sv =
                mesh.ns == 1 ? 0.0
                             : -mesh.half_width + 2.0 * mesh.half_width * is / (mesh.ns - 1);
            const Vec2& phi = mesh.flat_at(it, is);
            flat.rows.push_back({ts[static_cast<std::size_t>(it)], sv, phi[0], phi[1]});
        }
    }
    const std::string flat_path = s.flat_output.empty() ? obj_path + ".flat.csv" : s.flat_output;
    write_table(flat_path, flat);
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

void run_alphas(const Settings& s) {
    const AlphaPair a = alpha_constants(make_rigidity(s));
    std::printf("alpha_plus %.12f alpha_minus %.12f\n", a.plus, a.minus);
}

void run_density_table(const Settings& s) {
    const ReferenceChart chart = make_chart(s);
    const ReducedDensity density(make_rigidity(s));
    const ChartNode& node = chart.node(nearest_node(chart, s.at_t));

    if (s.mu_count < 1 || s.tau_count < 1)
        throw InputError("grid.mu_count / grid.tau_count: must be >= 1");
    const auto mus = linspace(s.mu_min, s.mu_max, s.mu_count);
    const auto taus = linspace(s.tau_min, s.tau_max, s.tau_count);

    const std::size_t total = mus.size() * taus.size();
    std::vector<std::array<double, 4>> rows(total);
    parallel_for(total, [&](std::size_t k) {
        const double mu = mus[k / taus.size()];
        const double tau = taus[k % taus.size()];
        const DensityPoint pt = density.at(node, mu, tau);
        rows[k] = {mu, tau, pt.value, pt.gamma};
    });

    Table table;
    put(table.config, "command", std::string("density-table"));
    add_rigidity_keys(table.config, s);
    add_chart_keys(table.config, s);
    put(table.config, "grid.mu_min", s.mu_min);
    put(table.config, "grid.mu_max", s.mu_max);
    put(table.config, "grid.mu_count", s.mu_count);
    put(table.config, "grid.tau_min", s.tau_min);
    put(table.config, "grid.tau_max", s.tau_max);
    put(table.config, "grid.tau_count", s.tau_count);
    put(table.config, "grid.t", node.t);
    table.columns = {"mu", "tau", "qbar", "gamma_star"};
    for (const auto& r : rows) table.rows.push_back({r[0], r[1], r[2], r[3]});
    emit_table(s.output, table);
}

void run_spontaneous(const Settings& s) {
    const ReferenceChart chart = make_chart(s);
    const ReducedDensity density(make_rigidity(s));
    const auto points = spontaneous_profile(density, chart);

    Header base;
    put(base, "command", std::string("spontaneous"));
    add_rigidity_keys(base, s);
    add_chart_keys(base, s);

    Table table;
    table.config = base;
    table.columns = {"t", "mu", "tau", "gamma_star", "qbar"};
    for (int i = 0; i < chart.node_count(); ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        table.rows.push_back({chart.node(i).t, p.mu, p.tau, p.gamma, p.value});
    }
    emit_table(s.output, table);

    Profile profile;
    for (const auto& p : points) {
        profile.mu.push_back(p.mu);
        profile.tau.push_back(p.tau);
    }

    if (!s.emit_centerline.empty()) {
        std::vector<double> ts(static_cast<std::size_t>(chart.node_count()));
        std::vector<FrameCoefficients> coeffs(ts.size());
        for (int i = 0; i < chart.node_count(); ++i) {
            const ChartNode& n = chart.node(i);
            ts[static_cast<std::size_t>(i)] = n.t;
            coeffs[static_cast<std::size_t>(i)] =
                frame_coefficients(n.D, n.kappa, profile.mu[static_cast<std::size_t>(i)],
                                   profile.tau[static_cast<std::size_t>(i)]);
        }
        const FramePath path = integrate_frames(ts, coeffs);
        const Directors dirs = material_directors(path, chart);

        Table line;
        line.config = base;
        line.columns = {"t",   "y1",  "y2",  "y3",  "d1x", "d1y", "d1z",
                        "d2x", "d2y", "d2z", "d3x", "d3y", "d3z"};
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const Vec3& y = path.y[i];
            line.rows.push_back({ts[i], y[0], y[1], y[2], dirs.d1[i][0], dirs.d1[i][1],
                                 dirs.d1[i][2], dirs.d2[i][0], dirs.d2[i][1], dirs.d2[i][2],
                                 dirs.d3[i][0], dirs.d3[i][1], dirs.d3[i][2]});
        }
        write_table(s.emit_centerline, line);
    }

    if (!s.emit_mesh.empty()) {
        Header header = base;
        add_surface_keys(header, s);
        write_mesh_outputs(s, density, chart, profile, s.emit_mesh, std::move(header));
    }
}

void run_reconstruct(const Settings& s) {
    const ReferenceChart chart = make_chart(s);
    const ReducedDensity density(make_rigidity(s));
    const Profile profile = resolve_profile(s, density, chart);

    Header header;
    put(header, "command", std::string("reconstruct"));
    add_rigidity_keys(header, s);
    add_chart_keys(header, s);
    add_surface_keys(header, s);
    if (!s.profile_file.empty()) put(header, "profile", s.profile_file);

    const std::string obj_path = s.output.empty() ? "ribbon.obj" : s.output;
    write_mesh_outputs(s, density, chart, profile, obj_path, std::move(header));
}

void run_corrugate(const Settings& s) {
    const ReferenceChart chart = make_chart(s);
    const ReducedDensity density(make_rigidity(s));
    const Profile profile = resolve_profile(s, density, chart);
    const auto field = corrugate(density, chart, profile.mu, profile.tau, s.cells);

    Table table;
    put(table.config, "command", std::string("corrugate"));
    add_rigidity_keys(table.config, s);
    add_chart_keys(table.config, s);
    put(table.config, "surface.cells", s.cells);
    if (!s.profile_file.empty()) put(table.config, "profile", s.profile_file);
    table.columns = {"t", "m11", "m12", "m22"};
    for (int i = 0; i < chart.node_count(); ++i) {
        const Voigt3& v = field[static_cast<std::size_t>(i)];
        table.rows.push_back({chart.node(i).t, v[0], 0.5 * v[2], v[1]});
    }
    emit_table(s.output, table);
}

// ---------------------------------------------------------------------------
// Validation suites. Each row draws from its own generator seeded by
// seed + row, so reports are reproducible row by row and independent of
// the worker count.
// ---------------------------------------------------------------------------

Table suite_header(const Settings& s, const std::string& suite, int rows) {
    Table t;
    put(t.config, "command", std::string("validate"));
    put(t.config, "suite", suite);
    put(t.config, "seed", std::to_string(s.seed));
    put(t.config, "rows", rows);
    return t;
}

Table validate_alphas(const Settings& s) {
    const int n = 100;
    Table t = suite_header(s, "alphas", n);
    t.columns = {"seed", "k11",          "k12",          "k22",     "k33",
                 "closed_plus", "closed_minus", "bisect_plus", "bisect_minus", "abs_err"};
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const unsigned long long row_seed = s.seed + i;
        std::mt19937_64 rng(row_seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double k11 = 0.2 + 2.8 * u(rng);
        const double k22 = 0.2 + 2.8 * u(rng);
        const double k12 = (1.8 * u(rng) - 0.9) * std::sqrt(k11 * k22);
        const double k33 = 0.05 + 1.95 * u(rng);
        const Rigidity c = Rigidity::orthotropic(k11, k12, k22, k33);
        const AlphaPair closed = orthotropic_alphas(c);
        const AlphaPair bisect = alpha_constants(c);
        const double err = std::max(std::abs(closed.plus - bisect.plus),
                                    std::abs(closed.minus - bisect.minus));
        rows[i] = {static_cast<double>(row_seed), k11, k12, k22, k33,
                   closed.plus, closed.minus, bisect.plus, bisect.minus, err};
    });
    t.rows = std::move(rows);
    return t;
}

Table validate_relaxation(const Settings& s) {
    const int n = 20;
    Table t = suite_header(s, "relaxation", n);
    t.columns = {"seed", "detm", "z", "formula", "decomposition", "oracle", "rel_err"};
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const unsigned long long row_seed = s.seed + i;
        std::mt19937_64 rng(row_seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Mat3 a;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) a(r, c) = u(rng);
        const Mat3 spd = a.transpose() * a + 0.3 * Mat3::Identity();
        const RelaxationProblem problem{Rigidity::from_matrix(spd), 2.0 * u(rng)};
        Voigt3 m(1.5 * u(rng), 1.5 * u(rng), 1.5 * u(rng));
        const double formula = relaxed_integrand(problem, m);
        const double decomposition = two_point_decomposition(problem, m).value;
        const double oracle = brute_force_biconjugate(problem, m, 6.0, 32);
        const double rel_err =
            std::abs(decomposition - formula) / std::max(1.0, std::abs(formula));
        rows[i] = {static_cast<double>(row_seed), det_form(m), problem.z,
                   formula, decomposition, oracle, rel_err};
    });
    t.rows = std::move(rows);
    return t;
}

Table validate_density(const Settings& s) {
    const int n = 50;
    Table t = suite_header(s, "density", n);
    t.columns = {"seed", "k11", "k12", "k22", "k33", "mu", "tau", "qbar", "closed", "abs_err"};
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const unsigned long long row_seed = s.seed + i;
        std::mt19937_64 rng(row_seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double k11 = 1.0, k12 = 0.0, k22 = 1.0, k33 = 1.0;
        // Redraw until the closed form's precondition holds.
        for (;;) {
            k11 = 0.2 + 2.8 * u(rng);
            k22 = 0.2 + 2.8 * u(rng);
            k12 = (1.8 * u(rng) - 0.9) * std::sqrt(k11 * k22);
            k33 = 0.05 + 1.95 * u(rng);
            if (4.0 * k33 >= 2.0 * (std::sqrt(k11 * k22) - k12)) break;
        }
        const double mu = 6.0 * u(rng) - 3.0;
        const double tau = 6.0 * u(rng) - 3.0;
        const Rigidity c = Rigidity::orthotropic(k11, k12, k22, k33);
        const double qbar = ReducedDensity(c).plain(mu, tau).value;
        const double closed = orthotropic_reduced_density(*c.orthotropic_constants(), mu, tau);
        rows[i] = {static_cast<double>(row_seed), k11, k12, k22, k33, mu, tau,
                   qbar, closed, std::abs(qbar - closed)};
    });
    t.rows = std::move(rows);
    return t;
}

Table validate_frames(const Settings& s) {
    const int n = 10;
    const int nodes = 4097;
    const double len = 3.0;
    Table t = suite_header(s, "frames", n);
    t.columns = {"seed", "kappa", "mu", "tau", "ortho_drift", "end_err"};
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const unsigned long long row_seed = s.seed + i;
        std::mt19937_64 rng(row_seed);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        double kappa = u(rng), mu = u(rng), tau = u(rng);
        while (std::hypot(kappa, mu, tau) < 1e-3) {
            kappa = u(rng);
            mu = u(rng);
            tau = u(rng);
        }

        std::vector<double> ts(static_cast<std::size_t>(nodes));
        std::vector<FrameCoefficients> coeffs(ts.size(), FrameCoefficients{kappa, mu, tau});
        for (int k = 0; k < nodes; ++k)
            ts[static_cast<std::size_t>(k)] = len * k / (nodes - 1);
        const FramePath path = integrate_frames(ts, coeffs);

        double drift = 0.0;
        for (const Mat3& r : path.r)
            drift = std::max(drift, (r.transpose() * r - Mat3::Identity()).norm());

        // Constant coefficients integrate exactly: y(len) is the first row
        // of int_0^len exp(tW) dt = len I + (1-cos)/w^2 W + (w len - sin)/w^3 W^2.
        Mat3 w;
        w << 0.0, kappa, mu, -kappa, 0.0, tau, -mu, -tau, 0.0;
        const double omega = std::sqrt(kappa * kappa + mu * mu + tau * tau);
        const double c = std::cos(omega * len), si = std::sin(omega * len);
        const Mat3 integral = len * Mat3::Identity() + ((1.0 - c) / (omega * omega)) * w +
                              ((omega * len - si) / (omega * omega * omega)) * (w * w);
        const Vec3 exact = integral.row(0).transpose();
        rows[i] = {static_cast<double>(row_seed), kappa, mu, tau, drift,
                   (path.y.back() - exact).norm()};
    });
    t.rows = std::move(rows);
    return t;
}

Table validate_surface(const Settings& s) {
    const int n = 8;
    Table t = suite_header(s, "surface", n);
    t.columns = {"seed", "mu", "tau", "cells", "half_width", "min_overlap", "mean_gap"};
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const unsigned long long row_seed = s.seed + i;
        std::mt19937_64 rng(row_seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double tau = 2.0 * u(rng) - 1.0;
        const double mu = std::abs(tau) + 0.2 + 1.3 * u(rng);
        const int cells = 16;

        const ReferenceChart chart = ReferenceChart::rectangle(2.0, 257);
        const ReducedDensity density(Rigidity::isotropic(1.0, 0.0));
        std::vector<double> mus(static_cast<std::size_t>(chart.node_count()), mu);
        std::vector<double> taus(static_cast<std::size_t>(chart.node_count()), tau);
        const auto field = corrugate(density, chart, mus, taus, cells);
        const auto rank = rank_one_field(chart, field);
        const auto bound = width_bound(chart, rank, 0.5, 0.2);

        // Cell averages of the corrugated field against the relaxed target.
        double gap = 0.0;
        const int per = chart.node_count() / cells;
        for (int cell = 0; cell < cells; ++cell) {
            Voigt3 mean = Voigt3::Zero();
            int count = 0;
            for (int k = cell * per; k < std::min((cell + 1) * per, chart.node_count()); ++k) {
                mean += field[static_cast<std::size_t>(k)];
                ++count;
            }
            mean /= count;
            const Voigt3 target = density.at(chart.node(cell * per + per / 2), mu, tau).curvature;
            gap += (mean - target).cwiseAbs().maxCoeff();
        }
        gap /= cells;
        rows[i] = {static_cast<double>(row_seed), mu, tau, static_cast<double>(cells),
                   bound.half_width, bound.min_overlap, gap};
    });
    t.rows = std::move(rows);
    return t;
}

Table validate_spontaneous(const Settings& s) {
    const int n = 10;
    Table t = suite_header(s, "spontaneous", n);
    t.columns = {"seed", "mu", "tau", "value", "scan", "gap"};
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const unsigned long long row_seed = s.seed + i;
        std::mt19937_64 rng(row_seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);

        ChartNode node;
        node.D << 1.0, 0.8 * u(rng) - 0.4, 0.0, 0.7 + 0.7 * u(rng);
        node.kappa = u(rng) - 0.5;
        node.natural = SymMat2{2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};
        const double k11 = 0.2 + 2.8 * u(rng);
        const double k22 = 0.2 + 2.8 * u(rng);
        const double k12 = (1.8 * u(rng) - 0.9) * std::sqrt(k11 * k22);
        const double k33 = 0.05 + 1.95 * u(rng);
        const ReducedDensity density(Rigidity::orthotropic(k11, k12, k22, k33));

        const SpontaneousPoint best = minimize_density_at(density, node);

        // Independent coarse scan over the same adaptive range.
        const double r0 = 2.0 * (1.0 + node.natural.matrix().norm()) *
                          std::max(1.0, node.D.squaredNorm());
        double scan = density.at(node, 0.0, 0.0).value;
        const int grid = 201;
        for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b) {
                const double mu = -r0 + 2.0 * r0 * a / (grid - 1);
                const double tau = -r0 + 2.0 * r0 * b / (grid - 1);
                scan = std::min(scan, density.at(node, mu, tau).value);
            }
        rows[i] = {static_cast<double>(row_seed), best.mu, best.tau, best.value, scan,
                   scan - best.value};
    });
    t.rows = std::move(rows);
    return t;
}

void run_validate(const Settings& s, const std::string& suite, bool all) {
    std::vector<std::pair<std::string, Table (*)(const Settings&)>> suites = {
        {"alphas", validate_alphas},       {"relaxation", validate_relaxation},
        {"density", validate_density},     {"frames", validate_frames},
        {"surface", validate_surface},     {"spontaneous", validate_spontaneous},
    };

    std::string report;
    bool ran = false;
    for (const auto& [name, fn] : suites) {
        if (!all && name != suite) continue;
        if (ran) report += '\n';
        report += render_table(fn(s));
        ran = true;
    }
    if (!ran)
        throw InputError("validate: unknown suite '" + suite +
                         "'; expected one of alphas, relaxation, density, frames, surface, "
                         "spontaneous, or --all");

    std::cout << report;
    if (!s.output.empty()) {
        std::ofstream file(s.output, std::ios::binary);
        if (!file) throw InputError("cannot open " + s.output + " for writing");
        file << report;
    }
}

// ---------------------------------------------------------------------------

std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-dimensional limit model of anisotropic, naturally twisted ribbons"};
    app.require_subcommand(1);

    Settings s;
    std::string config_dummy;
    std::vector<double> iso_flag, ortho_flag, voigt_flag, ao_flag;
    std::string suite = "alphas";
    bool all_suites = false;

    try {
        const std::string config_path = find_config_path(argc, argv);
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) throw InputError("config: cannot open " + config_path);
            json doc;
            try {
                doc = json::parse(file, nullptr, true, true);
            } catch (const json::parse_error& e) {
                throw InputError("config: " + config_path + ": " + e.what());
            }
            apply_json(s, doc);
        }
        app.add_option("--config", config_dummy, "JSON configuration file");

        auto add_common = [&](CLI::App* sub, bool with_chart, bool with_surface) {
            sub->add_option("--config", config_dummy, "JSON configuration file");
            auto* iso = sub->add_option("--isotropic", iso_flag, "Kmu Klambda")->expected(2);
            auto* ort =
                sub->add_option("--orthotropic", ortho_flag, "K11 K12 K22 K33")->expected(4);
            auto* vgt = sub->add_option("--voigt", voigt_flag,
                                        "C11 C12 C13 C22 C23 C33 (upper triangle)")
                            ->expected(6);
            iso->excludes(ort)->excludes(vgt);
            ort->excludes(vgt);
            if (with_chart) {
                sub->add_option("--chart", s.chart_kind, "rectangle | arc | sheared | sampled")
                    ->check(CLI::IsMember({"rectangle", "arc", "sheared", "sampled"}));
                sub->add_option("--length", s.length, "chart length");
                sub->add_option("--intervals", s.intervals, "number of grid intervals");
                sub->add_option("--kappa0", s.kappa0, "arc geodesic curvature");
                sub->add_option("--d12", s.d12, "sheared chart entry D12");
                sub->add_option("--d22", s.d22, "sheared chart entry D22");
                sub->add_option("--chart-file", s.chart_file, "sampled chart CSV");
                sub->add_option("--ao", ao_flag, "constant natural curvature Ao11 Ao12 Ao22")
                    ->expected(3);
                sub->add_option("--natural-file", s.natural_file, "natural curvature table CSV");
            }
            if (with_surface) {
                sub->add_option("--half-width", s.half_width, "requested strip half width");
                sub->add_option("--width-samples", s.width_samples, "mesh samples across");
                sub->add_option("--margin", s.margin, "width safety margin in (0,1)");
                sub->add_option("--cells", s.cells, "corrugation cells (even)");
            }
            sub->add_option("--output,-o", s.output, "output path (stdout when absent)");
        };

        CLI::App* alphas_cmd = app.add_subcommand("alphas", "relaxation constants of a rigidity");
        add_common(alphas_cmd, false, false);

        CLI::App* table_cmd =
            app.add_subcommand("density-table", "reduced density over a (mu, tau) grid");
        add_common(table_cmd, true, false);
        table_cmd->add_option("--mu-min", s.mu_min);
        table_cmd->add_option("--mu-max", s.mu_max);
        table_cmd->add_option("--mu-count", s.mu_count);
        table_cmd->add_option("--tau-min", s.tau_min);
        table_cmd->add_option("--tau-max", s.tau_max);
        table_cmd->add_option("--tau-count", s.tau_count);
        table_cmd->add_option("--at-t", s.at_t, "chart parameter of the evaluation node");

        CLI::App* spont_cmd =
            app.add_subcommand("spontaneous", "energy-minimizing free profile");
        add_common(spont_cmd, true, true);
        spont_cmd->add_option("--emit-centerline", s.emit_centerline,
                              "write the reconstructed centerline and directors to this CSV");
        spont_cmd->add_option("--emit-mesh", s.emit_mesh, "write the reconstructed mesh OBJ");
        spont_cmd->add_option("--flat-output", s.flat_output, "flat coordinates CSV path");

        CLI::App* recon_cmd =
            app.add_subcommand("reconstruct", "ruled 3D mesh from a bending/twist profile");
        add_common(recon_cmd, true, true);
        recon_cmd->add_option("--profile", s.profile_file, "profile CSV (t, mu, tau)");
        recon_cmd->add_option("--flat-output", s.flat_output, "flat coordinates CSV path");

        CLI::App* corr_cmd =
            app.add_subcommand("corrugate", "developable field oscillating around a profile");
        add_common(corr_cmd, true, true);
        corr_cmd->add_option("--profile", s.profile_file, "profile CSV (t, mu, tau)");

        CLI::App* val_cmd = app.add_subcommand("validate", "seeded validation reports");
        val_cmd->add_option("--config", config_dummy, "JSON configuration file");
        val_cmd->add_option("suite", suite,
                            "alphas | relaxation | density | frames | surface | spontaneous");
        val_cmd->add_flag("--all", all_suites, "run every suite");
        val_cmd->add_option("--seed", s.seed, "base seed for all suites");
        val_cmd->add_option("--output,-o", s.output, "also write the report to this path");

        app.parse(argc, argv);

        if (!iso_flag.empty()) {
            s.rigidity_kind = "isotropic";
            s.k_mu = iso_flag[0];
            s.k_lambda = iso_flag[1];
        }
        if (!ortho_flag.empty()) {
            s.rigidity_kind = "orthotropic";
            s.k11 = ortho_flag[0];
            s.k12 = ortho_flag[1];
            s.k22 = ortho_flag[2];
            s.k33 = ortho_flag[3];
        }
        if (!voigt_flag.empty()) {
            s.rigidity_kind = "voigt";
            s.voigt = voigt_flag;
        }
        if (!ao_flag.empty()) {
            s.ao11 = ao_flag[0];
            s.ao12 = ao_flag[1];
            s.ao22 = ao_flag[2];
        }

        if (*alphas_cmd) run_alphas(s);
        else if (*table_cmd) run_density_table(s);
        else if (*spont_cmd) run_spontaneous(s);
        else if (*recon_cmd) run_reconstruct(s);
        else if (*corr_cmd) run_corrugate(s);
        else if (*val_cmd) run_validate(s, suite, all_suites);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
