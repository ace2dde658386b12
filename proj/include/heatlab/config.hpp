#ifndef HEATLAB_CONFIG_HPP
#define HEATLAB_CONFIG_HPP

// Sectioned key-value experiment configs:
//
//   [run]
//   scenario = uhke
//   [kernel]
//   preset = fractional
//   alpha = 1.0
//   [lattice]
//   d = 1
//   h = 0.02
//   L = 40
//   [schedule]
//   eta = 0
//   s = 1
//
// Lines starting with '#' or ';' are comments. Parsing errors carry the line
// number, the key, and the reason.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatlab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    // [run]
    std::string scenario;
    std::string out_dir; // optional; CLI --out overrides
    unsigned seed = 0;

    // [kernel]
    std::string preset = "fractional"; // fractional | cone | time-oscillating | mixed
    double alpha = 1.0;
    double Lambda = 1.0;
    double lambda_lower = 1.0;
    double cone_aperture = 0.0;       // 0 = preset default
    double oscillation_period = 0.0;  // 0 = preset default
    std::string phi_kind = "pure";    // mixed kernels only
    double alpha1 = 0.0;              // 0 = use alpha
    double alpha2 = 0.0;

    // [lattice]
    int d = 1;
    double h = 0.0;
    double L = 0.0;

    // [schedule]
    double eta = 0.0;
    double s = 0.0;
    int steps = 0; // 0 = auto rule tau <= h^alpha/4

    // [params]
    double rho = 0.0;
    double nu = 0.0; // 0 = determined by doubling search
    double C = 0.0;  // 0 = default 8 Lambda
    double sigma = 0.0;
    double wrap_tolerance = 1e-8;
    double ball_radius = 0.0; // coercivity; 0 = L/4
    std::vector<double> rho_sweep;
    std::vector<double> dt_sweep;
    std::vector<double> sigma_sweep;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Human-readable schema for `heatlab print-schema`.
std::string config_schema();

const std::vector<std::string>& known_scenarios();

} // namespace heatlab

#endif
