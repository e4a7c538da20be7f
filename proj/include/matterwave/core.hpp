#ifndef MATTERWAVE_CORE_HPP
#define MATTERWAVE_CORE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "matterwave/errors.hpp"

namespace matterwave {

using Complex = std::complex<double>;

/// Physical constants entering every closed form. Defaults are the natural
/// unit system hbar = m = 1 used throughout the examples and tests.
struct PhysConsts {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const;
};

/// The natural unit system: hbar = 1, m = 1.
PhysConsts natural_units();

/// Parameters of a Gaussian packet configuration: initial width parameter
/// beta, separation / well width d, relative phase phi in [0, 2pi).
struct PacketParams {
    double beta = 1.0;
    double d = 0.0;
    double phi = 0.0;
    PhysConsts consts{};

    void validate() const;

    /// Spreading time t0 = m beta^2 / hbar.
    double t0() const { return consts.mass * beta * beta / consts.hbar; }
};

/// Uniform 1D grid with both endpoints on the grid. n_points must be a
/// power of two >= 16 so any field can be handed to the spectral oracle
/// without resampling.
struct SpatialGrid {
    double x_min = -40.0;
    double x_max = 40.0;
    int n_points = 8192;

    void validate() const;
    double dx() const { return (x_max - x_min) / (n_points - 1); }
    double x(int i) const { return x_min + i * dx(); }

    bool operator==(const SpatialGrid&) const = default;
};

bool is_power_of_two(int n);

/// Complex amplitudes sampled on a grid at one time instant.
struct WaveField {
    SpatialGrid grid{};
    double time = 0.0;
    std::vector<Complex> amplitudes;

    /// Throws InvalidFieldError on size mismatch or non-finite amplitudes.
    void validate() const;
};

/// 2D counterpart, row-major with y fastest: amplitudes[ix * ny + iy].
struct WaveField2D {
    SpatialGrid grid_x{};
    SpatialGrid grid_y{};
    double time = 0.0;
    std::vector<Complex> amplitudes;

    Complex& at(int ix, int iy) { return amplitudes[static_cast<size_t>(ix) * grid_y.n_points + iy]; }
    const Complex& at(int ix, int iy) const { return amplitudes[static_cast<size_t>(ix) * grid_y.n_points + iy]; }

    void validate() const;
};

/// Trapezoidal quadrature of |psi|^2 over the grid.
double norm(const WaveField& field);
double norm(const WaveField2D& field);

/// Trapezoidal inner product <a|b> = integral conj(a) * b. Grids and times
/// must match.
Complex overlap(const WaveField& a, const WaveField& b);
Complex overlap(const WaveField2D& a, const WaveField2D& b);

/// Sample a wavefunction psi(x, t) on a grid.
WaveField sample_field(const SpatialGrid& grid, double time,
                       const std::function<Complex(double)>& psi);
WaveField2D sample_field(const SpatialGrid& grid_x, const SpatialGrid& grid_y, double time,
                         const std::function<Complex(double, double)>& psi);

} // namespace matterwave

#endif
