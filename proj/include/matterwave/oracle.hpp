#ifndef MATTERWAVE_ORACLE_HPP
#define MATTERWAVE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "matterwave/analytic.hpp"
#include "matterwave/core.hpp"

namespace matterwave {

/// Step configuration shared by the numerical propagators.
struct PropagatorConfig {
    PhysConsts consts{};
    double dt = 1e-4;
    int n_steps = 0;
    double norm_drift_tol = 1e-8;

    void validate() const;
};

/// Free evolution by n_steps * dt with a spectral split-operator scheme on
/// the periodic extension of the grid. The field must stay negligible near
/// the grid edges; norm drift beyond the tolerance raises UnstableRunError.
WaveField propagate_free(const WaveField& initial, const PropagatorConfig& cfg);

/// Dirichlet evolution (hard walls at both grid endpoints) with a
/// Crank-Nicolson step on a fourth-order compact spatial discretization.
/// Unconditionally stable; wall values stay exactly zero.
WaveField propagate_dirichlet(const WaveField& initial, const PropagatorConfig& cfg);

/// Raster mask of evolved grid points; everything outside is held at zero
/// (the infinite-potential region).
struct Mask2D {
    int nx = 0;
    int ny = 0;
    std::vector<std::uint8_t> allowed; // allowed[ix * ny + iy]

    bool at(int ix, int iy) const { return allowed[static_cast<size_t>(ix) * ny + iy] != 0; }

    /// All interior points of the rectangle (Dirichlet box).
    static Mask2D box(const SpatialGrid& grid_x, const SpatialGrid& grid_y);
    /// Interior of the wedge 0 < theta < angle; requires square cells.
    /// wall_offset_cells shifts the masking line inward (in units of the
    /// cell size, normal-weighted) to center the effective staircase wall
    /// on the true wall line.
    static Mask2D wedge(const SpatialGrid& grid_x, const SpatialGrid& grid_y, WedgeAngle angle,
                        double wall_offset_cells = 0.5);
};

/// Dirichlet evolution on the masked domain: alternating-direction sweeps,
/// each applying the exact one-dimensional Dirichlet propagator on every
/// contiguous segment of the sweep line via fast sine transforms. The sweep
/// order alternates every step, making consecutive step pairs symmetric.
/// Requires square cells (dx == dy).
WaveField2D propagate_dirichlet_2d(const WaveField2D& initial, const Mask2D& mask,
                                   const PropagatorConfig& cfg);

/// L2 distance sqrt(integral |a - b|^2) after removing the optimal global
/// phase (the one maximizing |<a|b>|). Zero iff the fields agree up to a
/// global phase.
double l2_error(const WaveField& a, const WaveField& b);
double l2_error(const WaveField2D& a, const WaveField2D& b);

} // namespace matterwave

#endif
