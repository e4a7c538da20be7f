#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "matterwave/scenario.hpp"
#include "matterwave/spectral.hpp"

using namespace matterwave;
namespace fs = std::filesystem;

namespace {

std::vector<ScenarioConfig> expect_valid(std::string_view text) {
    auto result = validate_config(text);
    if (std::holds_alternative<std::vector<ConfigIssue>>(result)) {
        std::string all;
        for (const auto& issue : std::get<std::vector<ConfigIssue>>(result))
            all += std::to_string(issue.line) + ": " + issue.message + "\n";
        FAIL("unexpected validation errors:\n" << all);
        return {};
    }
    return std::get<std::vector<ScenarioConfig>>(result);
}

std::vector<ConfigIssue> expect_invalid(std::string_view text) {
    auto result = validate_config(text);
    REQUIRE(std::holds_alternative<std::vector<ConfigIssue>>(result));
    return std::get<std::vector<ConfigIssue>>(result);
}

bool any_issue_contains(const std::vector<ConfigIssue>& issues, std::string_view needle) {
    for (const auto& issue : issues)
        if (issue.message.find(needle) != std::string::npos) return true;
    return false;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("matterwave_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream stream(path, std::ios::binary);
    REQUIRE(stream.good());
    std::ostringstream out;
    out << stream.rdbuf();
    return out.str();
}

// Trapezoid over the density column of a field CSV (x,re,im,density).
double csv_density_norm(const fs::path& path) {
    std::ifstream stream(path);
    REQUIRE(stream.good());
    std::string line;
    std::getline(stream, line); // header
    std::vector<double> xs;
    std::vector<double> ds;
    while (std::getline(stream, line)) {
        double x, re, im, density;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &re, &im, &density) == 4);
        xs.push_back(x);
        ds.push_back(density);
    }
    double sum = 0.0;
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        sum += 0.5 * (ds[i] + ds[i + 1]) * (xs[i + 1] - xs[i]);
    return sum;
}

} // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("empty config names the required keys") {
    const auto issues = expect_invalid("");
    CHECK(any_issue_contains(issues, "no scenario section"));
    CHECK(any_issue_contains(issues, "beta"));
    CHECK(any_issue_contains(issues, "times"));
}

TEST_CASE("syntax errors carry their line number") {
    const auto issues = expect_invalid("[two_bec]\nbeta = 0.1\nwhat is this\n");
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].line == 3);
    CHECK(any_issue_contains(issues, "syntax error"));
}

TEST_CASE("semantic problems are collected, not fail-fast") {
    const auto issues = expect_invalid("[two_bec]\n"
                                       "beta = -1\n"
                                       "d = -2\n"
                                       "times = 1, 0.5\n"
                                       "grid.n_points = 100\n");
    CHECK(issues.size() >= 4);
    CHECK(any_issue_contains(issues, "beta must be positive"));
    CHECK(any_issue_contains(issues, "nonnegative"));
    CHECK(any_issue_contains(issues, "sorted ascending"));
    CHECK(any_issue_contains(issues, "power of two"));
}

TEST_CASE("unknown outputs name the valid set") {
    const auto issues = expect_invalid("[two_bec]\nbeta = 0.1\nd = 2\ntimes = 1\n"
                                       "outputs = density, sandwich\n");
    REQUIRE(issues.size() == 1);
    CHECK(any_issue_contains(issues, "unknown output 'sandwich'"));
    CHECK(any_issue_contains(issues, "momentum_density"));
    CHECK(any_issue_contains(issues, "oracle_compare"));
}

TEST_CASE("outputs must match the scenario") {
    const auto issues = expect_invalid("[two_bec]\nbeta = 0.1\nd = 2\ntimes = 1\n"
                                       "outputs = autocorrelation\n");
    CHECK(any_issue_contains(issues, "not available for scenario"));
}

TEST_CASE("degenerate superpositions are caught at validation time") {
    const auto issues = expect_invalid("[two_bec]\n"
                                       "beta = 0.1\n"
                                       "d = 0\n"
                                       "phi_degrees = 180\n"
                                       "times = 0, 1\n");
    CHECK(any_issue_contains(issues, "vanishes identically"));
}

TEST_CASE("unknown keys and unknown sections are reported") {
    const auto issues = expect_invalid("[two_bec]\nbeta = 0.1\nd = 2\ntimes = 1\nwidget = 3\n"
                                       "[banana]\nbeta = 1\n");
    CHECK(any_issue_contains(issues, "key 'widget' is not recognized"));
    CHECK(any_issue_contains(issues, "unknown scenario type 'banana'"));
}

TEST_CASE("defaults are materialized and the canonical form round-trips") {
    const std::string text = "[well]\nbeta = 0.05\nd = 1\ntimes = 0, 0.1\n";
    const auto configs = expect_valid(text);
    REQUIRE(configs.size() == 1);
    const ScenarioConfig& cfg = configs[0];
    CHECK(cfg.name == "well");
    CHECK(cfg.center == doctest::Approx(-0.5));
    CHECK(cfg.grid.x_min == doctest::Approx(-1.0));
    CHECK(cfg.grid.x_max == 0.0);
    CHECK(cfg.n_max == 200);

    const std::string canonical = canonical_config(cfg);
    const auto reparsed = expect_valid(canonical);
    REQUIRE(reparsed.size() == 1);
    CHECK(canonical_config(reparsed[0]) == canonical);
}

TEST_CASE("canonical round-trip for every scenario kind") {
    const std::string text =
        "[two_bec]\nbeta = 0.1\nd = 2\nphi_degrees = 33.5\ntimes = 0.25, 1\n"
        "outputs = density, momentum_density, fringes, timescales\n"
        "[multi_bec]\nbeta = 0.1\ncenters = -2, 0, 2\nphases_degrees = 0, 90, 180\ntimes = 1\n"
        "[mirror]\nbeta = 0.1\nd = 2\ntimes = 0.5\n"
        "[well]\nbeta = 0.05\nd = 1\ntimes = 0.1\nn_max = 150\n"
        "[corner]\nbeta = 0.1\ncenter_x = 1\ncenter_y = 1\ntimes = 0.25\n"
        "grid.x_max = 8\ngrid.y_max = 8\ngrid.n_points = 128\ngrid.n_points_y = 128\n"
        "[wedge]\nbeta = 0.1\ncenter_x = 1\ncenter_y = 0.5\nangle_degrees = 60\ntimes = 0.25\n"
        "grid.x_max = 8\ngrid.y_max = 8\ngrid.n_points = 128\ngrid.n_points_y = 128\n";
    const auto configs = expect_valid(text);
    REQUIRE(configs.size() == 6);
    for (const ScenarioConfig& cfg : configs) {
        const std::string canonical = canonical_config(cfg);
        const auto reparsed = expect_valid(canonical);
        REQUIRE(reparsed.size() == 1);
        CHECK(canonical_config(reparsed[0]) == canonical);
    }
}

TEST_CASE("duplicate names across sections are rejected") {
    const auto issues = expect_invalid("[two_bec]\nname = a\nbeta = 0.1\nd = 2\ntimes = 1\n"
                                       "[mirror]\nname = a\nbeta = 0.1\nd = 2\ntimes = 1\n");
    CHECK(any_issue_contains(issues, "duplicate scenario name"));
}

TEST_CASE("minimal two-packet run writes normalized density CSVs") {
    const std::string text = "[two_bec]\nname = mini\nbeta = 0.1\nd = 2\ntimes = 0, 1\n"
                             "grid.n_points = 2048\n";
    const auto configs = expect_valid(text);
    const fs::path dir = fresh_dir("mini");
    const ScenarioResult result = run_scenario(configs[0], dir);
    REQUIRE(result.csv_files.size() == 2);
    for (const fs::path& file : result.csv_files)
        CHECK(std::abs(csv_density_norm(file) - 1.0) < 1e-6);
    CHECK(fs::exists(result.summary_file));
    CHECK(result.summary_text.find("norm[t=0] = ") != std::string::npos);
}

TEST_CASE("summary re-validates to an equivalent configuration") {
    const std::string text = "[two_bec]\nname = echo\nbeta = 0.1\nd = 2\ntimes = 0.5\n"
                             "grid.n_points = 1024\noutputs = density, timescales, fringes\n";
    const auto configs = expect_valid(text);
    const fs::path dir = fresh_dir("echo");
    const ScenarioResult result = run_scenario(configs[0], dir);
    const auto reparsed = expect_valid(result.summary_text);
    REQUIRE(reparsed.size() == 1);
    CHECK(canonical_config(reparsed[0]) == canonical_config(configs[0]));
    // Fringe results land in the summary with the far-field prediction.
    CHECK(result.summary_text.find("fringes[t=0.5].wavelength") != std::string::npos);
    CHECK(result.summary_text.find("farfield_prediction") != std::string::npos);
    CHECK(result.summary_text.find("timescales.T_rev") != std::string::npos);
}

TEST_CASE("repeated runs produce byte-identical outputs") {
    const std::string text = "[two_bec]\nname = det\nbeta = 0.1\nd = 2\ntimes = 0, 0.5\n"
                             "grid.n_points = 1024\n"
                             "outputs = density, momentum_density, fringes, timescales\n";
    const auto configs = expect_valid(text);
    const fs::path dir_a = fresh_dir("det_a");
    const fs::path dir_b = fresh_dir("det_b");
    const ScenarioResult a = run_scenario(configs[0], dir_a);
    const ScenarioResult b = run_scenario(configs[0], dir_b);
    REQUIRE(a.csv_files.size() == b.csv_files.size());
    for (size_t i = 0; i < a.csv_files.size(); ++i)
        CHECK(slurp(a.csv_files[i]) == slurp(b.csv_files[i]));
    CHECK(a.summary_text == b.summary_text);
}

TEST_CASE("mirror scenario cross-validates against the numerical propagator") {
    const std::string text = "[mirror]\nname = wall\nbeta = 0.1\nd = 2\ntimes = 0.2\n"
                             "grid.x_min = -20\ngrid.x_max = 0\ngrid.n_points = 2048\n"
                             "outputs = density, oracle_compare\noracle.dt = 1e-4\n";
    const auto configs = expect_valid(text);
    const fs::path dir = fresh_dir("wall");
    const ScenarioResult result = run_scenario(configs[0], dir);
    const std::string& summary = result.summary_text;
    const size_t pos = summary.find("oracle.l2[t=0.2");
    REQUIRE(pos != std::string::npos);
    const size_t value_at = summary.find("] = ", pos);
    REQUIRE(value_at != std::string::npos);
    double l2 = 1.0;
    REQUIRE(std::sscanf(summary.c_str() + value_at + 4, "%lf", &l2) == 1);
    CHECK(l2 < 1e-3);
}

TEST_CASE("corner scenario runs the 2D pipeline end to end") {
    const std::string text = "[corner]\nname = quad\nbeta = 0.2\ncenter_x = 1\ncenter_y = 1\n"
                             "times = 0.1\ngrid.x_max = 8\ngrid.y_max = 8\n"
                             "grid.n_points = 128\ngrid.n_points_y = 128\n"
                             "outputs = density, oracle_compare\noracle.dt = 1e-3\n";
    const auto configs = expect_valid(text);
    const fs::path dir = fresh_dir("quad");
    const ScenarioResult result = run_scenario(configs[0], dir);
    REQUIRE(result.csv_files.size() == 1);
    const std::string& summary = result.summary_text;
    CHECK(summary.find("norm[t=0.1") != std::string::npos);
    const size_t pos = summary.find("oracle.l2[t=0.1");
    REQUIRE(pos != std::string::npos);
    const size_t value_at = summary.find("] = ", pos);
    double l2 = 1.0;
    REQUIRE(std::sscanf(summary.c_str() + value_at + 4, "%lf", &l2) == 1);
    CHECK(l2 < 1e-3); // rectangular domain: split sub-steps are exact
    // The 2D CSV carries the pinned five-column schema.
    std::ifstream csv(result.csv_files[0]);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,y,re_psi,im_psi,density");
}

TEST_CASE("well scenario reports the first revival near T_rev/8") {
    const PacketParams params{0.05, 1.0, 0.0, natural_units()};
    const double t_rev = timescales(params).T_rev;
    std::ostringstream text;
    text << "[well]\nname = revival\nbeta = 0.05\nd = 1\ntimes = 0, "
         << format_double(t_rev) << "\ngrid.n_points = 2048\n"
         << "outputs = autocorrelation, timescales\n";
    const auto configs = expect_valid(text.str());
    const fs::path dir = fresh_dir("revival");
    const ScenarioResult result = run_scenario(configs[0], dir);
    const std::string& summary = result.summary_text;
    const size_t pos = summary.find("revival.first_positive_time = ");
    REQUIRE(pos != std::string::npos);
    double first = 0.0;
    REQUIRE(std::sscanf(summary.c_str() + pos + 30, "%lf", &first) == 1);
    CHECK(std::abs(first - t_rev / 8.0) < 0.01 * t_rev / 8.0);
    CHECK(summary.find("revival.predicted_first_centered") != std::string::npos);
}

TEST_SUITE_END();
