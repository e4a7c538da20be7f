#ifndef MATTERWAVE_SPECTRAL_HPP
#define MATTERWAVE_SPECTRAL_HPP

#include <vector>

#include "matterwave/analytic.hpp"
#include "matterwave/core.hpp"

namespace matterwave {

/// Expansion of a packet over the eigenbasis of the infinite well [-d, 0],
/// phi_n(x) = sqrt(2/d) sin(n pi (x + d) / d), n = 1..n_max.
struct EigenExpansion {
    double well_width = 1.0;
    int n_max = 0;
    std::vector<Complex> coeffs; // coeffs[i] is c_{i+1}
    PhysConsts consts{};

    double captured_probability() const;
};

/// Eigenvalue E_n = n^2 pi^2 hbar^2 / (2 m d^2) of the well of width d.
double eigen_energy(int n, double d, const PhysConsts& consts);

/// Projects a t = 0 field supported inside the well onto the first n_max
/// eigenstates. The field grid must span exactly [-d, 0]. Throws
/// InsufficientBasisError when the captured probability falls below 0.999.
EigenExpansion project_packet(const WaveField& field, const Well& well, int n_max,
                              const PhysConsts& consts = PhysConsts{});

/// psi(x, t) = sum_n c_n phi_n(x) e^{-i E_n t / hbar} sampled on a grid
/// inside the well.
WaveField evolve_eigenbasis(const EigenExpansion& expansion, double t, const SpatialGrid& grid);

/// Autocorrelation A(t) = sum_n |c_n|^2 e^{-i E_n t / hbar}; A(0) is the
/// captured probability and |A| <= 1.
Complex autocorrelation(const EigenExpansion& expansion, double t);

/// The characteristic times of a packet of width beta in a well of width d:
/// spreading time t0, overlap time T_O, revival time T_rev, and the ratios
/// T_rev/T_O = 2d/(pi Delta x_0) and (T_O/t0)^2 = 2 (d/beta)^2.
struct TimeScales {
    double t0 = 0.0;
    double T_overlap = 0.0;
    double T_rev = 0.0;
    double ratio_rev_overlap = 0.0;
    double ratio_overlap_t0_sq = 0.0;
};

TimeScales timescales(const PacketParams& params);

} // namespace matterwave

#endif
