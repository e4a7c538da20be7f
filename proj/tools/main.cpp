// Scenario runner: validates declarative configs, evaluates the closed-form
// wavepacket constructions, runs the numerical cross-checks and writes
// deterministic CSV series plus a summary per scenario.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "matterwave/scenario.hpp"
#include "matterwave/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string read_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw matterwave::Error("cannot read config file " + path);
    std::ostringstream content;
    content << stream.rdbuf();
    return content.str();
}

void print_issues(const std::string& path, const std::vector<matterwave::ConfigIssue>& issues) {
    for (const matterwave::ConfigIssue& issue : issues) {
        if (issue.line > 0)
            std::cerr << path << ':' << issue.line << ": " << issue.message << '\n';
        else
            std::cerr << path << ": " << issue.message << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matterwave - expanding and interfering Gaussian matter-wave packets"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    auto* run = app.add_subcommand("run", "run every scenario in a config file");
    run->add_option("config", config_path, "scenario config file")->required();
    run->add_option("--out-dir", out_dir, "directory for CSV and summary output");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "validate a config and echo its canonical form");
    validate->add_option("config", validate_path, "scenario config file")->required();

    double beta = 0.0;
    double d = 0.0;
    double hbar = 1.0;
    double mass = 1.0;
    auto* scales = app.add_subcommand("timescales", "print the characteristic packet times");
    scales->add_option("--beta", beta, "initial Gaussian width parameter")->required();
    scales->add_option("--d", d, "separation / well width")->required();
    scales->add_option("--hbar", hbar, "Planck constant (default 1)");
    scales->add_option("--mass", mass, "particle mass (default 1)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        matterwave::ValidationResult result;
        try {
            result = matterwave::validate_config(read_file(config_path));
        } catch (const matterwave::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitRuntime;
        }
        if (std::holds_alternative<std::vector<matterwave::ConfigIssue>>(result)) {
            print_issues(config_path, std::get<std::vector<matterwave::ConfigIssue>>(result));
            return kExitValidation;
        }
        // Everything past validation is a runtime/numerical failure.
        try {
            for (const matterwave::ScenarioConfig& cfg :
                 std::get<std::vector<matterwave::ScenarioConfig>>(result)) {
                const matterwave::ScenarioResult out = matterwave::run_scenario(cfg, out_dir);
                std::cout << cfg.name << ": " << out.csv_files.size() << " series, summary "
                          << out.summary_file.string() << '\n';
            }
        } catch (const matterwave::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitRuntime;
        }
        return kExitOk;
    }
    if (validate->parsed()) {
        matterwave::ValidationResult result;
        try {
            result = matterwave::validate_config(read_file(validate_path));
        } catch (const matterwave::Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitRuntime;
        }
        if (std::holds_alternative<std::vector<matterwave::ConfigIssue>>(result)) {
            print_issues(validate_path, std::get<std::vector<matterwave::ConfigIssue>>(result));
            return kExitValidation;
        }
        for (const matterwave::ScenarioConfig& cfg :
             std::get<std::vector<matterwave::ScenarioConfig>>(result))
            std::cout << matterwave::canonical_config(cfg);
        return kExitOk;
    }
    if (scales->parsed()) {
        try {
            const matterwave::PacketParams params{beta, d, 0.0, {hbar, mass}};
            const matterwave::TimeScales ts = matterwave::timescales(params);
            std::cout << "t0 = " << matterwave::format_double(ts.t0) << '\n'
                      << "T_overlap = " << matterwave::format_double(ts.T_overlap) << '\n'
                      << "T_rev = " << matterwave::format_double(ts.T_rev) << '\n'
                      << "ratio_rev_overlap = " << matterwave::format_double(ts.ratio_rev_overlap)
                      << '\n'
                      << "ratio_overlap_t0_sq = "
                      << matterwave::format_double(ts.ratio_overlap_t0_sq) << '\n';
        } catch (const matterwave::DomainError& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitValidation;
        }
        return kExitOk;
    }
    return kExitOk;
}
