#pragma once

#include <string>
#include <vector>

namespace catgen {

/// Flat key = value scenario description. Every key has a default, the
/// serializer always writes the full canonical set, and
/// serialize(parse(.)) is idempotent.
struct ScenarioConfig {
    int schema_version = 1;

    std::string input_kind = "squeezed_vacuum"; // fock|coherent|amplitudes
    double kappa_magnitude = 0.0;
    double kappa_phase = 0.0;
    int fock_n = 0;
    double alpha_magnitude = 0.0;
    double alpha_phase = 0.0;
    std::vector<double> amplitudes_re;
    std::vector<double> amplitudes_im;
    int n_max = -1; // -1 = choose automatically

    double transmittance_sq = 1.0;
    double phi_t = 0.0;
    double phi_r = 0.0;

    std::string operation_kind = "subtract"; // add
    int operation_count = 1;

    std::string detector_kind = "ideal"; // chopping
    int detector_channels = 1;
    double detector_efficiency = 1.0;
    int detector_coincidences = 0;

    std::string source_kind = "pure"; // binomial
    int source_trials = 0;
    double source_p = 0.5;

    std::string grid_function = "wigner"; // husimi|quadrature
    std::string grid_route = "analytic";  // numeric
    double grid_x_min = -4.0, grid_x_max = 4.0;
    double grid_p_min = -4.0, grid_p_max = 4.0;
    int grid_n_x = 81, grid_n_p = 81;

    double compare_tolerance = 1e-6;

    std::string output_directory = ".";
};

/// Parse the key = value text. Unknown keys, malformed values and
/// unsupported schema versions raise ConfigError.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Canonical text form: every key, fixed order, 17 significant digits.
std::string serialize_config(const ScenarioConfig& cfg);

struct RunOptions {
    std::string command;        // generate|probability|grid|detector|compare
    std::string out_dir;        // overrides output_directory when nonempty
    std::string route_override; // "", "analytic" or "numeric"
    double tolerance_override = -1.0; // < 0 keeps the config value
};

/// Execute one command. Writes the per-command CSV output plus
/// summary.json into the output directory and returns the exit code
/// (0 success, 4 comparison beyond tolerance). Configuration problems
/// throw ConfigError, physics problems DomainError and friends; the
/// CLI maps those onto exit codes 1-3.
int run_scenario(const ScenarioConfig& cfg, const RunOptions& opts);

} // namespace catgen
