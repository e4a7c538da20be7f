#ifndef MATTERWAVE_ANALYTIC_HPP
#define MATTERWAVE_ANALYTIC_HPP

#include <span>
#include <vector>

#include "matterwave/core.hpp"

namespace matterwave {

// Degeneracy threshold for vanishing superpositions: below this the
// normalization constant only amplifies floating-point noise.
inline constexpr double kNormEpsilon = 1e-12;

/// One free Gaussian packet: center x0 plus the shared packet parameters
/// (beta and constants; d and phi are not used by a single term).
struct GaussianTerm {
    double center = 0.0;
    PacketParams params{};
};

/// Time-dependent width bookkeeping for a single Gaussian term:
/// beta_t = beta sqrt(1 + (t/t0)^2) with t0 = m beta^2 / hbar.
struct WidthSchedule {
    double beta0 = 1.0;
    double t0 = 1.0;

    static WidthSchedule from(const PacketParams& params);

    double beta_t(double t) const;
    /// Position spread Delta x_t = beta_t / sqrt(2).
    double delta_x(double t) const;
    /// Momentum spread Delta p = hbar / (beta sqrt(2)); constant in time.
    double delta_p(const PhysConsts& consts) const;
};

/// Normalized spreading Gaussian
///   psi(x,t) = (pi^{1/4} sqrt(beta (1 + i t/t0)))^{-1}
///              exp(-(x - x0)^2 / (2 beta^2 (1 + i t/t0))).
Complex gaussian_packet(const GaussianTerm& term, double x, double t);

/// Normalization of the two-packet superposition:
///   N = (1/sqrt(2)) (1 + cos(phi) e^{-d^2/4 beta^2})^{-1/2}.
/// Throws DegenerateSuperpositionError when the expression under the root
/// falls below kNormEpsilon (phi = pi with coincident packets).
double two_bec_norm(const PacketParams& params);

/// Superposition of two packets released at +-d/2 with relative phase phi:
///   psi = N [ G(x; +d/2) + e^{i phi} G(x; -d/2) ].
Complex two_bec_wavefunction(const PacketParams& params, double x, double t);

/// Closed-form density of the two-packet state,
///   N^2/(sqrt(pi) beta_t) [ e^{-(x-d/2)^2/beta_t^2} + e^{-(x+d/2)^2/beta_t^2}
///     + 2 e^{-(d^2+4x^2)/4 beta_t^2} cos(phi + t d x / (t0 beta_t^2)) ];
/// equals |two_bec_wavefunction|^2 everywhere.
double two_bec_density(const PacketParams& params, double x, double t);

/// Momentum-space density (4 N^2 alpha / sqrt(pi)) cos^2(p d / 2 hbar)
/// e^{-alpha^2 p^2} with alpha = beta/hbar; time-independent. Integrates
/// to one for phi = 0.
double two_bec_momentum_density(const PacketParams& params, double p);

/// Far-field fringe wavelength lambda = 2 pi hbar t / (m d). Valid for
/// (t/t0)^2 >> 1; the caller is responsible for the far-field condition.
double fringe_wavelength_farfield(const PacketParams& params, double t);

/// Exact local wavenumber of the interference cosine, k = t d / (t0 beta_t^2).
/// The far-field law above is its (t/t0)^2 >> 1 limit.
double local_fringe_wavenumber(const PacketParams& params, double t);

/// One packet of a multi-packet superposition: center and its phase.
struct PhasedCenter {
    double center = 0.0;
    double phase = 0.0;
};

/// Normalization of sum_k e^{i phi_k} G(x; x_k) from the pairwise Gaussian
/// overlap integrals e^{-(x_j - x_k)^2 / 4 beta^2} (time-independent).
double multi_packet_norm(std::span<const PhasedCenter> terms, const PacketParams& params);

/// Normalized superposition of any number of packets; reduces to
/// gaussian_packet for one term and to two_bec_wavefunction for two.
Complex multi_packet_wavefunction(std::span<const PhasedCenter> terms,
                                  const PacketParams& params, double x, double t);

/// Mirror solution for a packet released at x0 = -d/2 next to a hard wall
/// at x = 0: Ntilde [psi(x,t) - psi(-x,t)] for x <= 0 and exactly 0 for
/// x > 0, with Ntilde = sqrt(2) N at phi = pi.
Complex mirror_wavefunction(const GaussianTerm& base, double x, double t);

/// Infinite well occupying the interval [-width, 0].
struct Well {
    double width = 1.0;
};

/// One image term of a well or wedge construction.
struct SignedCenter {
    double center = 0.0;
    double sign = 1.0;
};

/// Image centers (reflections -x0 - 2nd with sign -1, translations
/// x0 + 2nd with sign +1) truncated so the omitted tails contribute less
/// than tol anywhere in the well.
std::vector<SignedCenter> well_image_centers(const GaussianTerm& base, const Well& well,
                                             double t, double tol);

/// Alternating image sum for a packet inside the well [-d, 0]; vanishes at
/// both walls within tol and is 0 outside the well.
Complex well_image_wavefunction(const GaussianTerm& base, const Well& well,
                                double x, double t, double tol);

/// Same sum with an explicit image range |n| <= n_images (testing hook for
/// the truncation rule).
Complex well_image_wavefunction_n(const GaussianTerm& base, const Well& well,
                                  double x, double t, int n_images);

/// Isotropic 2D Gaussian packet released at (center_x, center_y).
struct Gaussian2D {
    double center_x = 1.0;
    double center_y = 1.0;
    PacketParams params{};
};

/// Product form psi(x,t) psi(y,t); isotropic about the center.
Complex gaussian_packet_2d(const Gaussian2D& base, double x, double y, double t);

/// Closed-form normalization of the corner construction from pairwise 2D
/// Gaussian overlaps: N = [(1 - e^{-x0^2/beta^2})(1 - e^{-y0^2/beta^2})]^{-1/2}.
double corner_norm(const Gaussian2D& base);

/// Corner reflector (two perpendicular hard walls along the axes):
///   N [psi(x,y) - psi(-x,y) - psi(x,-y) + psi(-x,-y)]
/// inside the closed first quadrant, 0 outside; vanishes on both half-axes.
Complex corner_wavefunction(const Gaussian2D& base, double x, double y, double t);

/// Supported wedge opening angles between the two walls.
enum class WedgeAngle { deg90, deg60, deg45 };

/// One image term of a wedge construction.
struct SignedCenter2D {
    double x = 0.0;
    double y = 0.0;
    double sign = 1.0;
};

/// Dihedral reflection-group geometry of a wedge with walls along the
/// polar rays theta = 0 and theta = angle.
struct WedgeGeometry {
    WedgeAngle angle = WedgeAngle::deg90;

    /// Throws DomainError for anything but 90, 60 or 45 degrees.
    static WedgeGeometry from_degrees(double degrees);

    double degrees() const;
    double radians() const;
    /// Number of image terms, 2 * (180 / angle): 4, 6 or 8.
    int image_count() const;
    /// Signed orbit of a center under the dihedral group; rotations carry
    /// sign +1, reflections sign -1.
    std::vector<SignedCenter2D> images(double cx, double cy) const;
};

/// Normalization of the wedge construction from pairwise overlaps,
/// N = [sum_g sign(g) e^{-|c - g c|^2 / 4 beta^2}]^{-1/2}.
double wedge_norm(const WedgeGeometry& geom, const Gaussian2D& base);

/// Signed image sum over the dihedral group; vanishes on both wedge walls,
/// 0 outside the closed wedge. The 90-degree case equals corner_wavefunction.
Complex wedge_wavefunction(const WedgeGeometry& geom, const Gaussian2D& base,
                           double x, double y, double t);

} // namespace matterwave

#endif
