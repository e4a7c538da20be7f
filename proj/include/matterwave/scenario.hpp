#ifndef MATTERWAVE_SCENARIO_HPP
#define MATTERWAVE_SCENARIO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matterwave/analytic.hpp"
#include "matterwave/core.hpp"

namespace matterwave {

enum class ScenarioKind { two_bec, multi_bec, mirror, well, corner, wedge };

enum class OutputKind {
    density,
    momentum_density,
    fringes,
    autocorrelation,
    timescales,
    oracle_compare,
};

std::string to_string(ScenarioKind kind);
std::string to_string(OutputKind kind);

/// A fully validated scenario with every default materialized. Angles are
/// kept in degrees exactly as configured so the canonical echo is
/// byte-stable; packet_params() converts to radians.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::two_bec;
    std::string name;

    double beta = 0.1;
    double d = 0.0;
    double phi_degrees = 0.0;
    double hbar = 1.0;
    double mass = 1.0;

    std::vector<double> times;
    SpatialGrid grid{};
    SpatialGrid grid_y{}; // corner / wedge only

    double center = 0.0;                 // well packet center
    std::vector<double> centers;         // multi_bec
    std::vector<double> phases_degrees;  // multi_bec
    double center_x = 1.0;               // corner / wedge
    double center_y = 1.0;
    double angle_degrees = 90.0;         // wedge

    std::vector<OutputKind> outputs;
    double oracle_dt = 1e-4;
    int n_max = 200;            // well eigenbasis size
    int autocorr_samples = 2048;
    double autocorr_threshold = 0.99;

    PacketParams packet_params() const;
    std::vector<PhasedCenter> phased_centers() const;
    WedgeAngle wedge_angle() const;
    Gaussian2D gaussian_2d() const;
};

/// One validation problem, tagged with its 1-based config line (0 for
/// file-level problems).
struct ConfigIssue {
    int line = 0;
    std::string message;
};

using ValidationResult = std::variant<std::vector<ScenarioConfig>, std::vector<ConfigIssue>>;

/// Parses and validates scenario configuration text. Semantic problems are
/// collected (not fail-fast); a malformed line yields a single syntax error
/// with its location.
ValidationResult validate_config(std::string_view text);

/// Canonical key-value form of a validated scenario; parsing it back yields
/// an equivalent configuration, byte for byte under canonical_config.
std::string canonical_config(const ScenarioConfig& cfg);

struct ScenarioResult {
    std::vector<std::filesystem::path> csv_files;
    std::filesystem::path summary_file;
    std::string summary_text;
};

/// Executes one scenario and writes its CSV series plus a summary (the
/// canonical config followed by commented result lines) into out_dir.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

/// Formats a double with 17 significant digits (the CSV/summary contract).
std::string format_double(double value);

} // namespace matterwave

#endif
