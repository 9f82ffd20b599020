#include "capmcf/experiment.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "capmcf/geometry.hpp"
#include "capmcf/oracle.hpp"

namespace capmcf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752;

void fill_solver_defaults(ExperimentConfig& c) {
    if (c.params.h <= 0.0) c.params.h = 0.5 * c.grid.dx * c.grid.dx;
    c.params.mu = 1.0 / c.params.h;
    if (c.rho <= 0.0) c.rho = 10.0 * c.grid.dx;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"grim-reaper", "star", "sine-line", "disk"};
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig c;
    c.preset = name;
    if (name == "grim-reaper") {
        c.grid = make_grid(0.0, 2.0, 0.0, 1.0, 800, 400);
        c.beta_left = -kInvSqrt2;
        c.beta_right = -kInvSqrt2;
        c.beta_bottom = kInvSqrt2;
        c.beta_top = 0.0;
        c.horizon = 0.08;
        c.stride = 400;
    } else if (name == "star") {
        c.grid = make_grid(-5.0, 5.0, -5.0, 5.0, 500, 500);
        c.horizon = 1.0;
        c.stride = 100;
    } else if (name == "sine-line") {
        // The wall weights reconstruct the theta_l + theta_r = pi/2+pi/2
        // setup: zero on the side walls, bottom anchored like the soliton.
        c.grid = make_grid(0.0, 2.0, -2.0, 1.0, 300, 450);
        c.beta_bottom = kInvSqrt2;
        c.horizon = 0.35;
        c.stride = 250;
    } else if (name == "disk") {
        c.grid = make_grid(-5.0, 5.0, -5.0, 5.0, 500, 500);
        c.horizon = 0.375;
        c.stride = 125;
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    fill_solver_defaults(c);
    return c;
}

ScalarField initial_field(const ExperimentConfig& config) {
    const GridSpec& g = config.grid;
    ScalarField w(g);
    if (config.preset == "grim-reaper") {
        for (int i = 1; i <= g.n_y; ++i)
            for (int j = 1; j <= g.n_x; ++j)
                w.at(i, j) = g.y_of(i) - oracle::grim_reaper_profile(g.x_of(j), 0.0);
        return w;
    }
    if (config.preset == "star") {
        for (int i = 1; i <= g.n_y; ++i)
            for (int j = 1; j <= g.n_x; ++j) {
                const double x = g.x_of(j), y = g.y_of(i);
                const double r = std::hypot(x, y);
                const double th = std::atan2(y, x);
                w.at(i, j) = r - (3.0 + std::sin(5.0 * th));
            }
        return w;
    }
    if (config.preset == "sine-line") {
        for (int i = 1; i <= g.n_y; ++i)
            for (int j = 1; j <= g.n_x; ++j)
                w.at(i, j) = g.y_of(i) -
                             (0.25 * std::sin(std::numbers::pi * g.x_of(j)) + 0.5);
        return w;
    }
    if (config.preset == "disk") {
        for (int i = 1; i <= g.n_y; ++i)
            for (int j = 1; j <= g.n_x; ++j)
                w.at(i, j) = std::hypot(g.x_of(j), g.y_of(i)) - 1.0;
        return w;
    }
    return sign_grid(load_polygon(config.polygon_file), g);
}

BetaPolicy beta_policy(const ExperimentConfig& config) {
    if (config.beta_mode == BetaMode::Walls) {
        return BoundaryField::from_walls(config.grid, config.beta_left,
                                         config.beta_right, config.beta_bottom,
                                         config.beta_top);
    }
    ContactAngleSpec spec;
    spec.rho = config.rho;
    const GridSpec g = config.grid;
    const double tl = config.theta_left, tr = config.theta_right;
    const double tb = config.theta_bottom, tt = config.theta_top;
    spec.theta = [g, tl, tr, tb, tt](double /*t*/, double s) {
        // Ring arc-length -> wall. Corners resolve like the ring layout:
        // bottom and top rows own their j range, side columns the rest.
        const double dx = g.dx;
        const int k = static_cast<int>(std::floor(s / dx + 0.5));
        const int nx = g.n_x, ny = g.n_y;
        if (k < nx) return tb;
        if (k < nx + ny - 1) return tr;
        if (k < nx + ny - 1 + nx - 1) return tt;
        return tl;
    };
    return spec;
}

namespace {

json config_to_json(const ExperimentConfig& c) {
    json j;
    if (!c.preset.empty()) j["preset"] = c.preset;
    if (!c.polygon_file.empty()) j["polygon"] = c.polygon_file;
    j["grid"] = {{"alpha_x", c.grid.alpha_x}, {"beta_x", c.grid.beta_x},
                 {"alpha_y", c.grid.alpha_y}, {"beta_y", c.grid.beta_y},
                 {"n_x", c.grid.n_x},         {"n_y", c.grid.n_y}};
    if (c.beta_mode == BetaMode::Walls) {
        j["beta"] = {{"mode", "walls"},
                     {"left", c.beta_left},
                     {"right", c.beta_right},
                     {"bottom", c.beta_bottom},
                     {"top", c.beta_top}};
    } else {
        j["beta"] = {{"mode", "angles"},
                     {"theta_left", c.theta_left},
                     {"theta_right", c.theta_right},
                     {"theta_bottom", c.theta_bottom},
                     {"theta_top", c.theta_top}};
    }
    j["rho"] = c.rho;
    j["h"] = c.params.h;
    j["lambda"] = c.params.lambda;
    j["tol"] = c.params.tol;
    j["max_iters"] = c.params.max_iters;
    j["shrink"] = c.params.shrink == ShrinkVariant::Paper ? "paper" : "standard";
    j["T"] = c.horizon;
    j["stride"] = c.stride;
    j["dump_fields"] = c.dump_fields;
    j["dump_pgm"] = c.dump_pgm;
    j["out"] = c.out_dir;
    return j;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
}

ExperimentConfig config_from_json(const json& j) {
    static const std::vector<std::string> known = {
        "preset", "polygon", "grid", "beta", "rho", "h", "lambda", "tol",
        "max_iters", "shrink", "T", "stride", "dump_fields", "dump_pgm", "out",
        "verbose"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            bad_key(key, "unknown key");
    }

    ExperimentConfig c;
    const bool has_preset = j.contains("preset");
    const bool has_polygon = j.contains("polygon");
    if (has_preset == has_polygon)
        throw ConfigError("exactly one of config keys 'preset' and 'polygon' is required");

    if (has_preset) {
        c = preset_config(j.at("preset").get<std::string>());
    } else {
        c.polygon_file = j.at("polygon").get<std::string>();
        if (!fs::exists(c.polygon_file))
            bad_key("polygon", "file not found: " + c.polygon_file);
        if (!j.contains("grid")) bad_key("grid", "required for polygon runs");
    }
    if (j.contains("grid")) {
        const json& gj = j.at("grid");
        for (const auto& [key, value] : gj.items()) {
            static const std::vector<std::string> gkeys = {
                "alpha_x", "beta_x", "alpha_y", "beta_y", "n_x", "n_y"};
            if (std::find(gkeys.begin(), gkeys.end(), key) == gkeys.end())
                bad_key("grid." + key, "unknown key");
        }
        try {
            c.grid = make_grid(gj.at("alpha_x").get<double>(),
                               gj.at("beta_x").get<double>(),
                               gj.at("alpha_y").get<double>(),
                               gj.at("beta_y").get<double>(),
                               gj.at("n_x").get<int>(), gj.at("n_y").get<int>());
        } catch (const std::invalid_argument& e) {
            bad_key("grid", e.what());
        }
        c.params.h = 0.0;  // re-derive defaults for the new spacing
        c.rho = 0.0;
    }
    if (j.contains("beta")) {
        const json& bj = j.at("beta");
        const std::string mode = bj.at("mode").get<std::string>();
        if (mode == "walls") {
            c.beta_mode = BetaMode::Walls;
            c.beta_left = bj.value("left", 0.0);
            c.beta_right = bj.value("right", 0.0);
            c.beta_bottom = bj.value("bottom", 0.0);
            c.beta_top = bj.value("top", 0.0);
            for (double b : {c.beta_left, c.beta_right, c.beta_bottom, c.beta_top})
                if (std::abs(b) > 1.0) bad_key("beta", "|beta| must be <= 1");
        } else if (mode == "angles") {
            c.beta_mode = BetaMode::Angles;
            c.theta_left = bj.value("theta_left", c.theta_left);
            c.theta_right = bj.value("theta_right", c.theta_right);
            c.theta_bottom = bj.value("theta_bottom", c.theta_bottom);
            c.theta_top = bj.value("theta_top", c.theta_top);
            for (double t : {c.theta_left, c.theta_right, c.theta_bottom, c.theta_top})
                if (t < 0.0 || t > std::numbers::pi)
                    bad_key("beta", "angles must lie in [0, pi]");
        } else {
            bad_key("beta.mode", "expected 'walls' or 'angles'");
        }
    }
    if (j.contains("rho")) {
        c.rho = j.at("rho").get<double>();
        if (c.rho <= 0.0) bad_key("rho", "must be > 0");
    }
    if (j.contains("h")) {
        c.params.h = j.at("h").get<double>();
        if (c.params.h <= 0.0) bad_key("h", "must be > 0");
    }
    if (j.contains("lambda")) {
        c.params.lambda = j.at("lambda").get<double>();
        if (c.params.lambda <= 0.0) bad_key("lambda", "must be > 0");
    }
    if (j.contains("tol")) {
        c.params.tol = j.at("tol").get<double>();
        if (c.params.tol <= 0.0) bad_key("tol", "must be > 0");
    }
    if (j.contains("max_iters")) {
        c.params.max_iters = j.at("max_iters").get<int>();
        if (c.params.max_iters < 1) bad_key("max_iters", "must be >= 1");
    }
    if (j.contains("shrink")) {
        const std::string s = j.at("shrink").get<std::string>();
        if (s == "paper") c.params.shrink = ShrinkVariant::Paper;
        else if (s == "standard") c.params.shrink = ShrinkVariant::Standard;
        else bad_key("shrink", "expected 'paper' or 'standard'");
    }
    if (j.contains("T")) {
        c.horizon = j.at("T").get<double>();
        if (c.horizon < 0.0) bad_key("T", "must be >= 0");
    }
    if (j.contains("stride")) {
        c.stride = j.at("stride").get<int>();
        if (c.stride < 1) bad_key("stride", "must be >= 1");
    }
    if (j.contains("dump_fields")) c.dump_fields = j.at("dump_fields").get<bool>();
    if (j.contains("dump_pgm")) c.dump_pgm = j.at("dump_pgm").get<bool>();
    if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
    if (j.contains("verbose")) c.verbose = j.at("verbose").get<bool>();

    fill_solver_defaults(c);
    return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
    if (j.contains("config")) j = j.at("config");  // accept run manifests
    try {
        return config_from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
}

namespace {

void write_pgm(const ScalarField& w, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    double lo = w.values[0], hi = w.values[0];
    for (double v : w.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    os << "P2\n" << w.grid.n_x << ' ' << w.grid.n_y << "\n255\n";
    for (int i = w.grid.n_y; i >= 1; --i) {
        for (int j = 1; j <= w.grid.n_x; ++j) {
            const int v = static_cast<int>(std::lround((w.at(i, j) - lo) * scale));
            os << v << (j == w.grid.n_x ? '\n' : ' ');
        }
    }
}

void append_csv_row(std::ostream& os, int frame, double t, int poly, int vertex,
                    double x, double y) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%d,%d,%.17g,%.17g\n", frame, t, poly,
                  vertex, x, y);
    os << buf;
}

}  // namespace

void emit_frame(const EvolutionState& state, const ExperimentConfig& config,
                int frame, std::ostream& contours) {
    const double t = state.time(config.params.h);
    const std::vector<Polyline> lines = extract_zero_contour(state.w);
    for (std::size_t p = 0; p < lines.size(); ++p)
        for (std::size_t v = 0; v < lines[p].size(); ++v)
            append_csv_row(contours, frame, t, static_cast<int>(p),
                           static_cast<int>(v), lines[p][v].x, lines[p][v].y);
    const std::string stem =
        (fs::path(config.out_dir) / ("w_" + std::to_string(state.step_index))).string();
    if (config.dump_fields) dump_field(state.w, stem + ".txt");
    if (config.dump_pgm) write_pgm(state.w, stem + ".pgm");
}

std::string manifest_json(const ExperimentConfig& config,
                          const RunArtifacts& artifacts) {
    json j;
    j["tool"] = "capmcf";
    j["version"] = kToolVersion;
    j["config"] = config_to_json(config);
    j["status"] = artifacts.status;
    j["frames"] = artifacts.frames;
    j["final_step"] = artifacts.final_state.step_index;
    json steps = json::array();
    for (const StepRecord& r : artifacts.steps) {
        steps.push_back({{"step", r.step},
                         {"iterations", r.iterations},
                         {"residual", r.residual},
                         {"converged", r.converged}});
    }
    j["steps"] = std::move(steps);
    return j.dump(2);
}

RunArtifacts run_experiment(const ExperimentConfig& config) {
    fs::create_directories(config.out_dir);
    std::ofstream contours((fs::path(config.out_dir) / "contours.csv").string());
    if (!contours)
        throw std::runtime_error("cannot open contours.csv under " + config.out_dir);
    contours << "frame,t,poly_id,vertex_id,x,y\n";

    RunArtifacts art;
    const BetaPolicy policy = beta_policy(config);
    EvolutionState state = make_initial_state(initial_field(config), policy);
    emit_frame(state, config, art.frames++, contours);

    const auto write_manifest = [&] {
        std::ofstream mf((fs::path(config.out_dir) / "manifest.json").string());
        mf << manifest_json(config, art) << '\n';
    };

    try {
        while (state.status == EvolutionStatus::Running &&
               state.time(config.params.h) < config.horizon) {
            state = step(state, policy, config.params);
            art.steps.push_back({state.step_index, state.solver_iterations,
                                 state.solver_residual, state.solver_converged});
            if (config.verbose && state.step_index % config.stride == 0) {
                std::cerr << "step " << state.step_index << " t="
                          << state.time(config.params.h) << " iters="
                          << state.solver_iterations << '\n';
            }
            const bool last = state.status != EvolutionStatus::Running ||
                              state.time(config.params.h) >= config.horizon;
            if (state.step_index % config.stride == 0 || last)
                emit_frame(state, config, art.frames++, contours);
        }
        switch (state.status) {
            case EvolutionStatus::Running: art.status = "ok"; break;
            case EvolutionStatus::Extinct: art.status = "extinct"; break;
            case EvolutionStatus::Full: art.status = "full"; break;
        }
    } catch (...) {
        art.status = "failed";
        art.final_state = state;
        write_manifest();
        throw;
    }
    art.final_state = std::move(state);
    write_manifest();
    return art;
}

}  // namespace capmcf
