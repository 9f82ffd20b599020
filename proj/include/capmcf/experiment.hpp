// Batch experiment front-end: presets, config files, contour/field emission.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "capmcf/scheme.hpp"

namespace capmcf {

inline constexpr const char* kToolVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BetaMode { Walls, Angles };

struct ExperimentConfig {
    std::string preset;        // exactly one of preset / polygon_file
    std::string polygon_file;

    GridSpec grid;
    BetaMode beta_mode = BetaMode::Walls;
    // Walls mode: fixed per-wall weights, frozen for the whole run.
    double beta_left = 0.0, beta_right = 0.0, beta_bottom = 0.0, beta_top = 0.0;
    // Angles mode: contact angles per wall (radians), beta rebuilt every
    // step from the current contact points dilated by rho.
    double theta_left = 1.5707963267948966, theta_right = 1.5707963267948966;
    double theta_bottom = 1.5707963267948966, theta_top = 1.5707963267948966;
    double rho = 0.0;  // 0 -> default 10*dx

    SolverParams params;   // h defaults to 0.5*dx^2, mu = 1/h
    double horizon = 0.0;  // T
    int stride = 1;        // frames at k == 0 mod stride (plus the last step)
    bool dump_fields = false;
    bool dump_pgm = false;
    std::string out_dir = "out";
    bool verbose = false;
};

// Named experiment setups with all hyperparameters filled in.
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Reads a JSON config (or a run manifest; its "config" object is used).
// Unknown keys, out-of-range values and missing files are ConfigErrors
// naming the offending key.
ExperimentConfig parse_config(const std::string& path);

// Level-set field of the configured initial data (analytic for presets,
// winding-number sign grid for polygon files).
ScalarField initial_field(const ExperimentConfig& config);
BetaPolicy beta_policy(const ExperimentConfig& config);

struct StepRecord {
    int step = 0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

struct RunArtifacts {
    EvolutionState final_state;
    std::vector<StepRecord> steps;
    int frames = 0;
    std::string status = "ok";
};

// Appends the contour rows of a state to the contours stream and, when
// enabled, writes w_<k>.txt / w_<k>.pgm next to it.
void emit_frame(const EvolutionState& state, const ExperimentConfig& config,
                int frame, std::ostream& contours);

// Full batch run: creates out_dir, writes contours.csv, per-stride dumps and
// manifest.json. On a mid-run failure the partial outputs are kept and the
// manifest carries the failure marker; the error is rethrown.
RunArtifacts run_experiment(const ExperimentConfig& config);

// Resolved config as manifest JSON (also accepted back by parse_config).
std::string manifest_json(const ExperimentConfig& config,
                          const RunArtifacts& artifacts);

}  // namespace capmcf
