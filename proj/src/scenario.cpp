#include "matterwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "matterwave/analysis.hpp"
#include "matterwave/oracle.hpp"
#include "matterwave/spectral.hpp"

namespace matterwave {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = M_PI;
constexpr double kWellImageTol = 1e-10;

const std::map<std::string, ScenarioKind> kKindNames = {
    {"two_bec", ScenarioKind::two_bec}, {"multi_bec", ScenarioKind::multi_bec},
    {"mirror", ScenarioKind::mirror},   {"well", ScenarioKind::well},
    {"corner", ScenarioKind::corner},   {"wedge", ScenarioKind::wedge},
};

const std::map<std::string, OutputKind> kOutputNames = {
    {"density", OutputKind::density},
    {"momentum_density", OutputKind::momentum_density},
    {"fringes", OutputKind::fringes},
    {"autocorrelation", OutputKind::autocorrelation},
    {"timescales", OutputKind::timescales},
    {"oracle_compare", OutputKind::oracle_compare},
};

bool is_2d(ScenarioKind kind) {
    return kind == ScenarioKind::corner || kind == ScenarioKind::wedge;
}

} // namespace

std::string to_string(ScenarioKind kind) {
    for (const auto& [name, value] : kKindNames)
        if (value == kind) return name;
    return "?";
}

std::string to_string(OutputKind kind) {
    for (const auto& [name, value] : kOutputNames)
        if (value == kind) return name;
    return "?";
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

PacketParams ScenarioConfig::packet_params() const {
    return PacketParams{beta, d, phi_degrees * kPi / 180.0, PhysConsts{hbar, mass}};
}

std::vector<PhasedCenter> ScenarioConfig::phased_centers() const {
    std::vector<PhasedCenter> terms(centers.size());
    for (size_t i = 0; i < centers.size(); ++i) {
        const double deg = i < phases_degrees.size() ? phases_degrees[i] : 0.0;
        terms[i] = PhasedCenter{centers[i], deg * kPi / 180.0};
    }
    return terms;
}

WedgeAngle ScenarioConfig::wedge_angle() const {
    return WedgeGeometry::from_degrees(angle_degrees).angle;
}

Gaussian2D ScenarioConfig::gaussian_2d() const {
    PacketParams p = packet_params();
    p.d = 0.0;
    p.phi = 0.0;
    return Gaussian2D{center_x, center_y, p};
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

struct RawEntry {
    int line = 0;
    std::string key;
    std::string value;
    bool used = false;
};

struct RawSection {
    int line = 0;
    std::string header;
    std::vector<RawEntry> entries;
};

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') return false;
    return std::isalpha(static_cast<unsigned char>(key.front())) != 0;
}

std::variant<std::vector<RawSection>, ConfigIssue> parse_sections(std::string_view text) {
    std::vector<RawSection> sections;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                              : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string line(raw);
        if (const size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                return ConfigIssue{line_no, "syntax error: unterminated section header"};
            sections.push_back({line_no, trim(line.substr(1, line.size() - 2)), {}});
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            return ConfigIssue{line_no, "syntax error: expected 'key = value' or '[section]'"};
        RawEntry entry{line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), false};
        if (!valid_key(entry.key))
            return ConfigIssue{line_no, "syntax error: malformed key '" + entry.key + "'"};
        if (sections.empty())
            return ConfigIssue{line_no, "syntax error: key before any [section] header"};
        sections.back().entries.push_back(entry);
    }
    return sections;
}

std::optional<double> parse_double(const std::string& text) {
    if (text.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(trim(item));
    return items;
}

// Key access with duplicate detection, type parsing and use tracking.
class SectionReader {
public:
    SectionReader(RawSection& section, std::vector<ConfigIssue>& issues)
        : section_(section), issues_(issues) {}

    RawEntry* find(const std::string& key) {
        RawEntry* hit = nullptr;
        for (RawEntry& entry : section_.entries) {
            if (entry.key != key) continue;
            if (hit)
                issues_.push_back({entry.line, "duplicate key '" + key + "'"});
            else
                hit = &entry;
            entry.used = true;
        }
        return hit;
    }

    std::optional<double> number(const std::string& key) {
        RawEntry* entry = find(key);
        if (!entry) return std::nullopt;
        auto v = parse_double(entry->value);
        if (!v) {
            issues_.push_back({entry->line, "value of '" + key + "' is not a finite number"});
            return std::nullopt;
        }
        return v;
    }

    std::optional<int> integer(const std::string& key) {
        RawEntry* entry = find(key);
        if (!entry) return std::nullopt;
        auto v = parse_double(entry->value);
        if (!v || *v != std::floor(*v) || std::abs(*v) > 1e9) {
            issues_.push_back({entry->line, "value of '" + key + "' is not an integer"});
            return std::nullopt;
        }
        return static_cast<int>(*v);
    }

    std::optional<std::vector<double>> number_list(const std::string& key) {
        RawEntry* entry = find(key);
        if (!entry) return std::nullopt;
        std::vector<double> values;
        for (const std::string& item : split_list(entry->value)) {
            auto v = parse_double(item);
            if (!v) {
                issues_.push_back({entry->line, "value of '" + key + "' has a non-numeric item '" +
                                                    item + "'"});
                return std::nullopt;
            }
            values.push_back(*v);
        }
        if (values.empty()) {
            issues_.push_back({entry->line, "value of '" + key + "' is an empty list"});
            return std::nullopt;
        }
        return values;
    }

    std::optional<std::string> text(const std::string& key) {
        RawEntry* entry = find(key);
        if (!entry) return std::nullopt;
        return entry->value;
    }

    int line_of(const std::string& key) const {
        for (const RawEntry& entry : section_.entries)
            if (entry.key == key) return entry.line;
        return section_.line;
    }

    void report_unknown(const std::string& kind_name) {
        for (const RawEntry& entry : section_.entries)
            if (!entry.used)
                issues_.push_back({entry.line, "key '" + entry.key +
                                                   "' is not recognized for scenario '" +
                                                   kind_name + "'"});
    }

private:
    RawSection& section_;
    std::vector<ConfigIssue>& issues_;
};

std::string output_names_joined() {
    std::string all;
    for (const auto& [name, value] : kOutputNames) {
        if (!all.empty()) all += ", ";
        all += name;
    }
    return all;
}

bool output_valid_for(OutputKind output, ScenarioKind kind) {
    switch (output) {
        case OutputKind::density:
        case OutputKind::oracle_compare:
            return true;
        case OutputKind::momentum_density:
            return kind == ScenarioKind::two_bec;
        case OutputKind::fringes:
            return kind == ScenarioKind::two_bec || kind == ScenarioKind::mirror;
        case OutputKind::autocorrelation:
            return kind == ScenarioKind::well;
        case OutputKind::timescales:
            return kind == ScenarioKind::two_bec || kind == ScenarioKind::mirror ||
                   kind == ScenarioKind::well;
    }
    return false;
}

double fold_degrees(double degrees) {
    double folded = std::fmod(degrees, 360.0);
    if (folded < 0.0) folded += 360.0;
    return folded;
}

} // namespace

ValidationResult validate_config(std::string_view text) {
    auto parsed = parse_sections(text);
    if (std::holds_alternative<ConfigIssue>(parsed))
        return std::vector<ConfigIssue>{std::get<ConfigIssue>(parsed)};
    std::vector<RawSection>& sections = std::get<std::vector<RawSection>>(parsed);

    std::vector<ConfigIssue> issues;
    if (sections.empty()) {
        issues.push_back({0, "no scenario section found; expected one of [two_bec], [multi_bec], "
                             "[mirror], [well], [corner], [wedge]"});
        issues.push_back({0, "every scenario requires at least: beta, times; two_bec/mirror/well "
                             "also require d, multi_bec requires centers, corner/wedge require "
                             "center_x and center_y, wedge requires angle_degrees"});
        return issues;
    }

    std::vector<ScenarioConfig> configs;
    std::set<std::string> names_seen;

    for (RawSection& section : sections) {
        const auto kind_it = kKindNames.find(section.header);
        if (kind_it == kKindNames.end()) {
            issues.push_back({section.line, "unknown scenario type '" + section.header +
                                                "'; expected two_bec, multi_bec, mirror, well, "
                                                "corner or wedge"});
            continue;
        }
        const ScenarioKind kind = kind_it->second;
        const std::string kind_name = section.header;
        SectionReader reader(section, issues);
        ScenarioConfig cfg;
        cfg.kind = kind;

        cfg.name = reader.text("name").value_or(kind_name);
        if (cfg.name.empty() || cfg.name.find_first_of("/\\ \t") != std::string::npos)
            issues.push_back({reader.line_of("name"),
                              "scenario name must be a non-empty token without spaces or slashes"});
        if (!names_seen.insert(cfg.name).second)
            issues.push_back({section.line, "duplicate scenario name '" + cfg.name + "'"});

        // Packet parameters.
        if (auto v = reader.number("beta"); v) {
            cfg.beta = *v;
            if (!(cfg.beta > 0.0))
                issues.push_back({reader.line_of("beta"), "beta must be positive"});
        } else {
            issues.push_back({section.line, "missing required key 'beta'"});
        }
        if (auto v = reader.number("hbar"); v) {
            cfg.hbar = *v;
            if (!(cfg.hbar > 0.0))
                issues.push_back({reader.line_of("hbar"), "hbar must be positive"});
        }
        if (auto v = reader.number("mass"); v) {
            cfg.mass = *v;
            if (!(cfg.mass > 0.0))
                issues.push_back({reader.line_of("mass"), "mass must be positive"});
        }

        const bool wants_d = kind == ScenarioKind::two_bec || kind == ScenarioKind::mirror ||
                             kind == ScenarioKind::well;
        if (wants_d) {
            if (auto v = reader.number("d"); v) {
                cfg.d = *v;
                const bool ok = kind == ScenarioKind::two_bec ? cfg.d >= 0.0 : cfg.d > 0.0;
                if (!ok)
                    issues.push_back({reader.line_of("d"),
                                      kind == ScenarioKind::two_bec
                                          ? "d must be nonnegative"
                                          : "d must be positive for this scenario"});
            } else {
                issues.push_back({section.line, "missing required key 'd'"});
            }
        }
        if (kind == ScenarioKind::two_bec)
            if (auto v = reader.number("phi_degrees"); v) cfg.phi_degrees = fold_degrees(*v);

        // Times.
        if (auto v = reader.number_list("times"); v) {
            cfg.times = *v;
            for (size_t i = 0; i < cfg.times.size(); ++i) {
                if (!(cfg.times[i] >= 0.0)) {
                    issues.push_back({reader.line_of("times"), "times must all be nonnegative"});
                    break;
                }
                if (i > 0 && cfg.times[i] < cfg.times[i - 1]) {
                    issues.push_back({reader.line_of("times"), "times must be sorted ascending"});
                    break;
                }
            }
        } else if (!reader.find("times")) {
            issues.push_back({section.line, "missing required key 'times'"});
        }

        // Grids (defaults depend on the scenario).
        switch (kind) {
            case ScenarioKind::two_bec:
            case ScenarioKind::multi_bec:
                cfg.grid = SpatialGrid{-40.0, 40.0, 8192};
                break;
            case ScenarioKind::mirror:
                cfg.grid = SpatialGrid{-80.0, 0.0, 8192};
                break;
            case ScenarioKind::well:
                cfg.grid = SpatialGrid{-cfg.d, 0.0, 2048};
                break;
            case ScenarioKind::corner:
            case ScenarioKind::wedge:
                cfg.grid = SpatialGrid{0.0, 18.0, 512};
                cfg.grid_y = SpatialGrid{0.0, 18.0, 512};
                break;
        }
        if (auto v = reader.number("grid.x_min"); v) cfg.grid.x_min = *v;
        if (auto v = reader.number("grid.x_max"); v) cfg.grid.x_max = *v;
        if (auto v = reader.integer("grid.n_points"); v) cfg.grid.n_points = *v;
        if (is_2d(kind)) {
            if (auto v = reader.number("grid.y_min"); v) cfg.grid_y.x_min = *v;
            if (auto v = reader.number("grid.y_max"); v) cfg.grid_y.x_max = *v;
            if (auto v = reader.integer("grid.n_points_y"); v) cfg.grid_y.n_points = *v;
        }
        try {
            cfg.grid.validate();
        } catch (const Error& e) {
            issues.push_back({section.line, std::string("grid: ") + e.what()});
        }
        if (is_2d(kind)) {
            try {
                cfg.grid_y.validate();
                const double hx = cfg.grid.dx();
                if (std::abs(cfg.grid_y.dx() - hx) > 1e-9 * hx)
                    issues.push_back({section.line, "corner/wedge grids must have square cells "
                                                    "(dx == dy)"});
            } catch (const Error& e) {
                issues.push_back({section.line, std::string("grid: ") + e.what()});
            }
        }

        // Kind-specific keys.
        if (kind == ScenarioKind::multi_bec) {
            if (auto v = reader.number_list("centers"); v)
                cfg.centers = *v;
            else if (!reader.find("centers"))
                issues.push_back({section.line, "missing required key 'centers'"});
            if (auto v = reader.number_list("phases_degrees"); v) {
                cfg.phases_degrees = *v;
                for (double& p : cfg.phases_degrees) p = fold_degrees(p);
                if (cfg.phases_degrees.size() != cfg.centers.size())
                    issues.push_back({reader.line_of("phases_degrees"),
                                      "phases_degrees must match the number of centers"});
            } else {
                cfg.phases_degrees.assign(cfg.centers.size(), 0.0);
            }
        }
        if (kind == ScenarioKind::well) {
            cfg.center = -cfg.d / 2.0;
            if (auto v = reader.number("center"); v) cfg.center = *v;
            if (!(cfg.center > -cfg.d) || !(cfg.center < 0.0))
                issues.push_back({reader.line_of("center"),
                                  "well packet center must lie strictly inside (-d, 0)"});
            if (auto v = reader.integer("n_max"); v) {
                cfg.n_max = *v;
                if (cfg.n_max < 1)
                    issues.push_back({reader.line_of("n_max"), "n_max must be >= 1"});
            }
            if (auto v = reader.integer("autocorr.samples"); v) {
                cfg.autocorr_samples = *v;
                if (cfg.autocorr_samples < 16)
                    issues.push_back({reader.line_of("autocorr.samples"),
                                      "autocorr.samples must be >= 16"});
            }
            if (auto v = reader.number("autocorr.threshold"); v) {
                cfg.autocorr_threshold = *v;
                if (!(cfg.autocorr_threshold > 0.0) || !(cfg.autocorr_threshold < 1.0))
                    issues.push_back({reader.line_of("autocorr.threshold"),
                                      "autocorr.threshold must lie in (0, 1)"});
            }
            const double slack = 1e-12 * std::max(1.0, cfg.d);
            if (std::abs(cfg.grid.x_min + cfg.d) > slack || std::abs(cfg.grid.x_max) > slack)
                issues.push_back({section.line, "well grid must span exactly [-d, 0]"});
        }
        if (kind == ScenarioKind::mirror) {
            if (std::abs(cfg.grid.x_max) > 1e-12)
                issues.push_back({section.line, "mirror grid must end at the wall (x_max = 0)"});
        }
        if (is_2d(kind)) {
            if (auto v = reader.number("center_x"); v)
                cfg.center_x = *v;
            else
                issues.push_back({section.line, "missing required key 'center_x'"});
            if (auto v = reader.number("center_y"); v)
                cfg.center_y = *v;
            else
                issues.push_back({section.line, "missing required key 'center_y'"});
        }
        if (kind == ScenarioKind::wedge) {
            if (auto v = reader.number("angle_degrees"); v) {
                cfg.angle_degrees = *v;
                if (*v != 90.0 && *v != 60.0 && *v != 45.0)
                    issues.push_back({reader.line_of("angle_degrees"),
                                      "angle_degrees must be one of 90, 60, 45"});
            } else {
                issues.push_back({section.line, "missing required key 'angle_degrees'"});
            }
        }

        // Outputs.
        cfg.outputs = {OutputKind::density};
        if (auto v = reader.text("outputs"); v) {
            cfg.outputs.clear();
            for (const std::string& item : split_list(*v)) {
                const auto out_it = kOutputNames.find(item);
                if (out_it == kOutputNames.end()) {
                    issues.push_back({reader.line_of("outputs"),
                                      "unknown output '" + item + "'; valid outputs: " +
                                          output_names_joined()});
                    continue;
                }
                if (!output_valid_for(out_it->second, kind)) {
                    issues.push_back({reader.line_of("outputs"),
                                      "output '" + item + "' is not available for scenario '" +
                                          kind_name + "'"});
                    continue;
                }
                cfg.outputs.push_back(out_it->second);
            }
            std::sort(cfg.outputs.begin(), cfg.outputs.end());
            cfg.outputs.erase(std::unique(cfg.outputs.begin(), cfg.outputs.end()),
                              cfg.outputs.end());
            if (cfg.outputs.empty())
                issues.push_back({reader.line_of("outputs"), "outputs must not be empty"});
        }

        // Oracle step; default follows the time span.
        const double t_span = cfg.times.empty() ? 0.0 : cfg.times.back();
        cfg.oracle_dt = t_span > 0.0 ? 1e-4 * t_span : 1e-4;
        if (auto v = reader.number("oracle.dt"); v) {
            cfg.oracle_dt = *v;
            if (!(cfg.oracle_dt > 0.0))
                issues.push_back({reader.line_of("oracle.dt"), "oracle.dt must be positive"});
        }

        reader.report_unknown(kind_name);

        // Degeneracy and geometry checks on the assembled parameters.
        if (issues.empty()) {
            try {
                switch (kind) {
                    case ScenarioKind::two_bec:
                        two_bec_norm(cfg.packet_params());
                        break;
                    case ScenarioKind::multi_bec: {
                        const auto terms = cfg.phased_centers();
                        multi_packet_norm(terms, cfg.packet_params());
                        break;
                    }
                    case ScenarioKind::mirror: {
                        PacketParams p = cfg.packet_params();
                        p.phi = kPi;
                        two_bec_norm(p);
                        break;
                    }
                    case ScenarioKind::well:
                        break;
                    case ScenarioKind::corner:
                        corner_norm(cfg.gaussian_2d());
                        break;
                    case ScenarioKind::wedge:
                        wedge_norm(WedgeGeometry{cfg.wedge_angle()}, cfg.gaussian_2d());
                        break;
                }
            } catch (const Error& e) {
                issues.push_back({section.line, e.what()});
            }
        }

        configs.push_back(std::move(cfg));
    }

    if (!issues.empty()) return issues;
    return configs;
}

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

namespace {

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    return out;
}

} // namespace

std::string canonical_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << '[' << to_string(cfg.kind) << "]\n";
    out << "name = " << cfg.name << '\n';
    out << "beta = " << format_double(cfg.beta) << '\n';
    const bool wants_d = cfg.kind == ScenarioKind::two_bec || cfg.kind == ScenarioKind::mirror ||
                         cfg.kind == ScenarioKind::well;
    if (wants_d) out << "d = " << format_double(cfg.d) << '\n';
    if (cfg.kind == ScenarioKind::two_bec)
        out << "phi_degrees = " << format_double(cfg.phi_degrees) << '\n';
    out << "hbar = " << format_double(cfg.hbar) << '\n';
    out << "mass = " << format_double(cfg.mass) << '\n';
    if (cfg.kind == ScenarioKind::well) out << "center = " << format_double(cfg.center) << '\n';
    if (cfg.kind == ScenarioKind::multi_bec) {
        out << "centers = " << join_doubles(cfg.centers) << '\n';
        out << "phases_degrees = " << join_doubles(cfg.phases_degrees) << '\n';
    }
    if (is_2d(cfg.kind)) {
        out << "center_x = " << format_double(cfg.center_x) << '\n';
        out << "center_y = " << format_double(cfg.center_y) << '\n';
    }
    if (cfg.kind == ScenarioKind::wedge)
        out << "angle_degrees = " << format_double(cfg.angle_degrees) << '\n';
    out << "times = " << join_doubles(cfg.times) << '\n';
    out << "grid.x_min = " << format_double(cfg.grid.x_min) << '\n';
    out << "grid.x_max = " << format_double(cfg.grid.x_max) << '\n';
    out << "grid.n_points = " << cfg.grid.n_points << '\n';
    if (is_2d(cfg.kind)) {
        out << "grid.y_min = " << format_double(cfg.grid_y.x_min) << '\n';
        out << "grid.y_max = " << format_double(cfg.grid_y.x_max) << '\n';
        out << "grid.n_points_y = " << cfg.grid_y.n_points << '\n';
    }
    out << "outputs = ";
    for (size_t i = 0; i < cfg.outputs.size(); ++i) {
        if (i) out << ", ";
        out << to_string(cfg.outputs[i]);
    }
    out << '\n';
    if (cfg.kind == ScenarioKind::well) {
        out << "n_max = " << cfg.n_max << '\n';
        out << "autocorr.samples = " << cfg.autocorr_samples << '\n';
        out << "autocorr.threshold = " << format_double(cfg.autocorr_threshold) << '\n';
    }
    out << "oracle.dt = " << format_double(cfg.oracle_dt) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace {

struct SummaryWriter {
    std::ostringstream out;

    void line(const std::string& text) { out << "# " << text << '\n'; }
    void value(const std::string& key, double v) { line(key + " = " + format_double(v)); }
};

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) throw Error("cannot open output file " + path.string());
    stream << content;
    if (!stream) throw Error("cannot write output file " + path.string());
}

std::string csv_row(std::initializer_list<double> values) {
    std::string row;
    for (const double v : values) {
        if (!row.empty()) row += ',';
        row += format_double(v);
    }
    row += '\n';
    return row;
}

std::string index_suffix(size_t i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%03zu", i);
    return buf;
}

// Analytic field samplers per scenario kind.
class FieldModel {
public:
    explicit FieldModel(const ScenarioConfig& cfg) : cfg_(cfg), params_(cfg.packet_params()) {
        if (cfg.kind == ScenarioKind::multi_bec) terms_ = cfg.phased_centers();
    }

    WaveField field_1d(double t) const {
        const SpatialGrid& grid = cfg_.grid;
        WaveField field{grid, t, std::vector<Complex>(grid.n_points)};
        switch (cfg_.kind) {
            case ScenarioKind::two_bec:
                for (int i = 0; i < grid.n_points; ++i)
                    field.amplitudes[i] = two_bec_wavefunction(params_, grid.x(i), t);
                break;
            case ScenarioKind::multi_bec:
                for (int i = 0; i < grid.n_points; ++i)
                    field.amplitudes[i] = multi_packet_wavefunction(terms_, params_, grid.x(i), t);
                break;
            case ScenarioKind::mirror: {
                const GaussianTerm base{-params_.d / 2.0, params_};
                for (int i = 0; i < grid.n_points; ++i)
                    field.amplitudes[i] = mirror_wavefunction(base, grid.x(i), t);
                break;
            }
            case ScenarioKind::well: {
                const GaussianTerm base{cfg_.center, params_};
                const Well well{params_.d};
                const auto centers = well_image_centers(base, well, t, kWellImageTol);
                for (int i = 0; i < grid.n_points; ++i) {
                    Complex sum = 0.0;
                    for (const SignedCenter& image : centers)
                        sum += image.sign *
                               gaussian_packet(GaussianTerm{image.center, params_}, grid.x(i), t);
                    field.amplitudes[i] = sum;
                }
                break;
            }
            default:
                throw Error("field_1d: not a 1D scenario");
        }
        return field;
    }

    WaveField2D field_2d(double t) const {
        const Gaussian2D base = cfg_.gaussian_2d();
        if (cfg_.kind == ScenarioKind::corner)
            return sample_field(cfg_.grid, cfg_.grid_y, t, [&](double x, double y) {
                return corner_wavefunction(base, x, y, t);
            });
        const WedgeGeometry geom{cfg_.wedge_angle()};
        return sample_field(cfg_.grid, cfg_.grid_y, t, [&](double x, double y) {
            return wedge_wavefunction(geom, base, x, y, t);
        });
    }

    double density_1d(double x, double t) const {
        switch (cfg_.kind) {
            case ScenarioKind::two_bec:
                return two_bec_density(params_, x, t);
            case ScenarioKind::mirror: {
                const GaussianTerm base{-params_.d / 2.0, params_};
                return std::norm(mirror_wavefunction(base, x, t));
            }
            default:
                throw Error("density_1d: unsupported scenario");
        }
    }

    const PacketParams& params() const { return params_; }

private:
    const ScenarioConfig& cfg_;
    PacketParams params_;
    std::vector<PhasedCenter> terms_;
};

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec && !fs::is_directory(out_dir))
        throw Error("cannot create output directory " + out_dir.string());

    const FieldModel model(cfg);
    SummaryWriter summary;
    ScenarioResult result;
    const bool two_d = is_2d(cfg.kind);

    auto wants = [&](OutputKind kind) {
        return std::find(cfg.outputs.begin(), cfg.outputs.end(), kind) != cfg.outputs.end();
    };
    auto emit_csv = [&](const std::string& stem, const std::string& content) {
        const fs::path path = out_dir / (cfg.name + "_" + stem + ".csv");
        write_text_file(path, content);
        result.csv_files.push_back(path);
    };

    // Density series (and per-time norms in the summary).
    if (wants(OutputKind::density)) {
        for (size_t i = 0; i < cfg.times.size(); ++i) {
            const double t = cfg.times[i];
            std::string csv;
            if (!two_d) {
                const WaveField field = model.field_1d(t);
                csv = "x,re_psi,im_psi,density\n";
                for (int j = 0; j < field.grid.n_points; ++j) {
                    const Complex a = field.amplitudes[j];
                    csv += csv_row({field.grid.x(j), a.real(), a.imag(), std::norm(a)});
                }
                summary.value("norm[t=" + format_double(t) + "]", norm(field));
            } else {
                const WaveField2D field = model.field_2d(t);
                csv = "x,y,re_psi,im_psi,density\n";
                for (int ix = 0; ix < field.grid_x.n_points; ++ix)
                    for (int iy = 0; iy < field.grid_y.n_points; ++iy) {
                        const Complex a = field.at(ix, iy);
                        csv += csv_row({field.grid_x.x(ix), field.grid_y.x(iy), a.real(), a.imag(),
                                        std::norm(a)});
                    }
                summary.value("norm[t=" + format_double(t) + "]", norm(field));
            }
            emit_csv("density_" + index_suffix(i), csv);
        }
    }

    // Momentum density: time-independent closed form.
    if (wants(OutputKind::momentum_density)) {
        const double p_max = 6.0 * cfg.hbar / cfg.beta;
        const int n_p = 1024;
        std::string csv = "p,density\n";
        for (int j = 0; j < n_p; ++j) {
            const double p = -p_max + 2.0 * p_max * j / (n_p - 1);
            csv += csv_row({p, two_bec_momentum_density(model.params(), p)});
        }
        emit_csv("momentum", csv);
        summary.line("momentum.p_max = " + format_double(p_max));
    }

    // Fringe extraction near the interference region.
    if (wants(OutputKind::fringes)) {
        for (const double t : cfg.times) {
            const std::string tag = "fringes[t=" + format_double(t) + "]";
            if (!(t > 0.0)) {
                summary.line(tag + " = none (no evolution)");
                continue;
            }
            const double lambda = fringe_wavelength_farfield(model.params(), t);
            const double window_center = cfg.kind == ScenarioKind::mirror ? -2.0 * lambda : 0.0;
            const double halfwidth = 2.0 * lambda;
            const int n_samples = 2048;
            DensityProfile profile;
            profile.x.resize(n_samples);
            profile.value.resize(n_samples);
            for (int j = 0; j < n_samples; ++j) {
                const double x = window_center - halfwidth +
                                 2.0 * halfwidth * j / (n_samples - 1);
                profile.x[j] = x;
                profile.value[j] = model.density_1d(x, t);
            }
            try {
                const FringeReport report = extract_fringes(profile, window_center, halfwidth, t);
                summary.value(tag + ".wavelength", report.local_wavelength);
                summary.value(tag + ".farfield_prediction", lambda);
                summary.value(tag + ".visibility", report.visibility);
            } catch (const NoFringesError&) {
                summary.line(tag + " = none (packets not overlapping)");
            }
        }
    }

    // Timescales of the configured packet.
    if (wants(OutputKind::timescales)) {
        const TimeScales ts = timescales(model.params());
        summary.value("timescales.t0", ts.t0);
        summary.value("timescales.T_overlap", ts.T_overlap);
        summary.value("timescales.T_rev", ts.T_rev);
        summary.value("timescales.ratio_rev_overlap", ts.ratio_rev_overlap);
        summary.value("timescales.ratio_overlap_t0_sq", ts.ratio_overlap_t0_sq);
    }

    // Well autocorrelation trace and revival detection.
    if (wants(OutputKind::autocorrelation)) {
        const WaveField initial = model.field_1d(0.0);
        const EigenExpansion expansion =
            project_packet(initial, Well{cfg.d}, cfg.n_max, PhysConsts{cfg.hbar, cfg.mass});
        summary.value("autocorr.captured_probability", expansion.captured_probability());
        const double t_end = cfg.times.back();
        if (!(t_end > 0.0)) {
            summary.line("autocorr = none (no positive time)");
        } else {
            std::vector<double> ts(cfg.autocorr_samples);
            std::vector<double> mags(cfg.autocorr_samples);
            std::string csv = "t,abs_autocorr\n";
            for (int j = 0; j < cfg.autocorr_samples; ++j) {
                ts[j] = t_end * j / (cfg.autocorr_samples - 1);
                mags[j] = std::abs(autocorrelation(expansion, ts[j]));
                csv += csv_row({ts[j], mags[j]});
            }
            emit_csv("autocorr", csv);
            const RevivalReport revivals = detect_revivals(ts, mags, cfg.autocorr_threshold);
            size_t reported = 0;
            bool first_positive_seen = false;
            for (size_t j = 0; j < revivals.times_of_maxima.size() && reported < 8; ++j) {
                if (!(revivals.times_of_maxima[j] > 0.0)) continue;
                summary.value("revival[" + std::to_string(reported) + "].time",
                              revivals.times_of_maxima[j]);
                summary.value("revival[" + std::to_string(reported) + "].magnitude",
                              revivals.magnitudes[j]);
                if (!first_positive_seen) {
                    summary.value("revival.first_positive_time", revivals.times_of_maxima[j]);
                    first_positive_seen = true;
                }
                ++reported;
            }
            if (!first_positive_seen) summary.line("revival.first_positive_time = none");
            // Centered packets revive at T_rev / 8 (only center-symmetric
            // eigenstates are populated).
            if (std::abs(cfg.center + cfg.d / 2.0) < 1e-9 * cfg.d) {
                const TimeScales scales = timescales(model.params());
                summary.value("revival.predicted_first_centered", scales.T_rev / 8.0);
            }
        }
    }

    // Cross-validation against the numerical propagators.
    if (wants(OutputKind::oracle_compare)) {
        summary.value("oracle.dt", cfg.oracle_dt);
        if (!two_d) {
            WaveField state = model.field_1d(0.0);
            double t_prev = 0.0;
            const bool free_run =
                cfg.kind == ScenarioKind::two_bec || cfg.kind == ScenarioKind::multi_bec;
            for (const double t : cfg.times) {
                if (t > t_prev) {
                    const int n = static_cast<int>(std::ceil((t - t_prev) / cfg.oracle_dt - 1e-12));
                    PropagatorConfig pcfg{PhysConsts{cfg.hbar, cfg.mass}, (t - t_prev) / n, n};
                    state = free_run ? propagate_free(state, pcfg)
                                     : propagate_dirichlet(state, pcfg);
                    t_prev = t;
                }
                WaveField reference = model.field_1d(t);
                reference.time = state.time;
                summary.value("oracle.l2[t=" + format_double(t) + "]", l2_error(state, reference));
            }
        } else {
            const Mask2D mask = cfg.kind == ScenarioKind::corner
                                    ? Mask2D::box(cfg.grid, cfg.grid_y)
                                    : Mask2D::wedge(cfg.grid, cfg.grid_y, cfg.wedge_angle());
            WaveField2D state = model.field_2d(0.0);
            double t_prev = 0.0;
            for (const double t : cfg.times) {
                if (t > t_prev) {
                    const int n = static_cast<int>(std::ceil((t - t_prev) / cfg.oracle_dt - 1e-12));
                    PropagatorConfig pcfg{PhysConsts{cfg.hbar, cfg.mass}, (t - t_prev) / n, n};
                    state = propagate_dirichlet_2d(state, mask, pcfg);
                    t_prev = t;
                }
                WaveField2D reference = model.field_2d(t);
                reference.time = state.time;
                summary.value("oracle.l2[t=" + format_double(t) + "]", l2_error(state, reference));
            }
        }
    }

    result.summary_text = canonical_config(cfg) + "# ---- results ----\n" + summary.out.str();
    result.summary_file = out_dir / (cfg.name + "_summary.txt");
    write_text_file(result.summary_file, result.summary_text);
    return result;
}

} // namespace matterwave
