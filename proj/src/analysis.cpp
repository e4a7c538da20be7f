#include "matterwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace matterwave {

namespace {

// Relative prominence below which a sample-level extremum is treated as flat
// (floating-point ripple on smooth profiles, not a fringe).
constexpr double kPeakProminence = 1e-9;

struct Vertex {
    double pos;
    double value;
};

// Parabola vertex through three samples with the middle one extremal.
Vertex parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom == 0.0) return {x1, y1};
    const double h = 0.5 * (x2 - x0);
    const double delta = 0.5 * (y0 - y2) / denom;
    return {x1 + delta * h, y1 - 0.25 * (y0 - y2) * delta};
}

} // namespace

FringeReport extract_fringes(const DensityProfile& profile, double window_center,
                             double window_halfwidth, double time) {
    const size_t n = profile.x.size();
    if (n != profile.value.size() || n < 3)
        throw DomainError("extract_fringes: profile needs matching x/value arrays of >= 3 samples");
    if (!(window_halfwidth > 0.0))
        throw DomainError("extract_fringes: window halfwidth must be positive");
    for (size_t i = 0; i < n; ++i) {
        if (!(profile.value[i] >= 0.0) || !std::isfinite(profile.value[i]))
            throw DomainError("extract_fringes: density must be nonnegative and finite");
        if (i > 0 && !(profile.x[i] > profile.x[i - 1]))
            throw DomainError("extract_fringes: positions must be strictly increasing");
    }

    const double lo = window_center - window_halfwidth;
    const double hi = window_center + window_halfwidth;
    size_t begin = 0;
    while (begin < n && profile.x[begin] < lo) ++begin;
    size_t end = n;
    while (end > begin && profile.x[end - 1] > hi) --end;

    double window_max = 0.0;
    for (size_t i = begin; i < end; ++i) window_max = std::max(window_max, profile.value[i]);
    const double floor = kPeakProminence * window_max;

    // Sample-level extrema with nontrivial prominence.
    std::vector<size_t> peak_idx;
    std::vector<size_t> valley_idx;
    for (size_t i = begin + 1; i + 1 < end; ++i) {
        const double y = profile.value[i];
        if (y > profile.value[i - 1] && y >= profile.value[i + 1] &&
            (y - profile.value[i - 1] > floor || y - profile.value[i + 1] > floor))
            peak_idx.push_back(i);
        if (y < profile.value[i - 1] && y <= profile.value[i + 1] &&
            (profile.value[i - 1] - y > floor || profile.value[i + 1] - y > floor))
            valley_idx.push_back(i);
    }

    if (peak_idx.size() < 3)
        throw NoFringesError("extract_fringes: fewer than three maxima in the window");

    auto interpolate = [&](size_t i) {
        return parabola_vertex(profile.x[i - 1], profile.value[i - 1], profile.x[i],
                               profile.value[i], profile.x[i + 1], profile.value[i + 1]);
    };

    FringeReport report;
    report.time = time;
    for (size_t i : peak_idx) report.peak_positions.push_back(interpolate(i).pos);

    // The local wavelength comes from the fringe minima: they sit at the
    // phase zeros of the interference term, while envelope modulation pulls
    // the maxima towards the envelope center (a -4 (beta/d)^2 spacing bias
    // for the two-packet state, above the extraction tolerance).
    std::vector<double> valley_pos;
    for (size_t i : valley_idx) valley_pos.push_back(interpolate(i).pos);
    double spacing = 0.0;
    size_t gaps = 0;
    for (size_t i = 1; i < valley_pos.size(); ++i) {
        spacing += valley_pos[i] - valley_pos[i - 1];
        ++gaps;
    }
    if (gaps == 0) { // degenerate sampling; fall back to the peak spacing
        for (size_t i = 1; i < report.peak_positions.size(); ++i) {
            spacing += report.peak_positions[i] - report.peak_positions[i - 1];
            ++gaps;
        }
    }
    report.local_wavelength = spacing / gaps;

    // Visibility from the central fringe: the peak nearest the window center
    // and the interpolated minima adjacent to it.
    size_t central = 0;
    double best = std::abs(report.peak_positions[0] - window_center);
    for (size_t i = 1; i < report.peak_positions.size(); ++i) {
        const double dist = std::abs(report.peak_positions[i] - window_center);
        if (dist < best) {
            best = dist;
            central = i;
        }
    }
    const size_t ci = peak_idx[central];
    auto interpolated_min = [&](size_t from, size_t to) { // raw minimum in [from, to]
        size_t arg = from;
        for (size_t i = from; i <= to; ++i)
            if (profile.value[i] < profile.value[arg]) arg = i;
        if (arg == 0 || arg + 1 >= n) return profile.value[arg];
        return std::max(0.0, interpolate(arg).value);
    };
    double i_min = std::numeric_limits<double>::infinity();
    if (central > 0) i_min = std::min(i_min, interpolated_min(peak_idx[central - 1], ci));
    if (central + 1 < peak_idx.size())
        i_min = std::min(i_min, interpolated_min(ci, peak_idx[central + 1]));
    const double i_max = interpolate(ci).value;
    report.visibility = (i_max + i_min > 0.0) ? (i_max - i_min) / (i_max + i_min) : 0.0;
    report.visibility = std::clamp(report.visibility, 0.0, 1.0);
    return report;
}

RevivalReport detect_revivals(std::span<const double> times,
                              std::span<const double> magnitudes, double threshold) {
    const size_t n = times.size();
    if (n != magnitudes.size() || n < 2)
        throw DomainError("detect_revivals: trace needs matching arrays of >= 2 samples");
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw DomainError("detect_revivals: threshold must lie in (0, 1)");
    for (size_t i = 1; i < n; ++i)
        if (!(times[i] > times[i - 1]))
            throw DomainError("detect_revivals: times must be strictly increasing");

    RevivalReport report;
    for (size_t i = 0; i < n; ++i) {
        const double y = magnitudes[i];
        if (!(y > threshold)) continue;
        // Plateau tie-break: only the earliest sample of a run qualifies.
        if (i > 0 && !(y > magnitudes[i - 1])) continue;
        size_t j = i;
        while (j + 1 < n && magnitudes[j + 1] == y) ++j;
        if (j + 1 < n && magnitudes[j + 1] > y) continue;

        if (i > 0 && j + 1 < n && i == j) {
            const Vertex v = parabola_vertex(times[i - 1], magnitudes[i - 1], times[i], y,
                                             times[i + 1], magnitudes[i + 1]);
            report.times_of_maxima.push_back(v.pos);
            report.magnitudes.push_back(v.value);
        } else {
            report.times_of_maxima.push_back(times[i]);
            report.magnitudes.push_back(y);
        }
    }
    return report;
}

} // namespace matterwave
