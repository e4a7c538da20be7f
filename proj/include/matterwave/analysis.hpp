#ifndef MATTERWAVE_ANALYSIS_HPP
#define MATTERWAVE_ANALYSIS_HPP

#include <span>
#include <vector>

#include "matterwave/core.hpp"

namespace matterwave {

/// Nonnegative density samples on strictly increasing positions.
struct DensityProfile {
    std::vector<double> x;
    std::vector<double> value;
};

/// Fringe measurements extracted from one density profile.
struct FringeReport {
    double time = 0.0;
    double local_wavelength = 0.0;          // mean adjacent fringe-minimum spacing
    double visibility = 0.0;                // (max - min) / (max + min), in [0, 1]
    std::vector<double> peak_positions;     // interpolated maxima, ascending
};

/// Locates fringe extrema by three-point quadratic interpolation inside the
/// window [center - halfwidth, center + halfwidth]. The local wavelength is
/// the mean adjacent spacing of the fringe minima (the phase-pinned zeros of
/// the interference term; maxima ride the envelope and are biased by
/// -4 (beta/d)^2 in spacing). Maxima are reported as peak_positions and feed
/// the visibility. Throws NoFringesError when fewer than three maxima are
/// found (packets not yet overlapping).
FringeReport extract_fringes(const DensityProfile& profile, double window_center,
                             double window_halfwidth, double time = 0.0);

/// Times and magnitudes of autocorrelation maxima above a threshold.
struct RevivalReport {
    std::vector<double> times_of_maxima;
    std::vector<double> magnitudes;
};

/// Scans a sampled |A(t)| trace for local maxima above the threshold, with
/// parabolic time interpolation at interior maxima. Plateaus report their
/// earliest sample; endpoints count as maxima without interpolation. An
/// empty report is a valid result.
RevivalReport detect_revivals(std::span<const double> times,
                              std::span<const double> magnitudes, double threshold);

} // namespace matterwave

#endif
